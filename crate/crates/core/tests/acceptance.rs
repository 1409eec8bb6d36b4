//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use alfeld::dofs3d::{build_dofset, check_commute, check_unisolvence, Diagram, DofSpace};
use alfeld::globalfe::{check_global_exact, RankMode};
use alfeld::polyforms::{canonical_dof_matrix, trace, PiecewiseKForm};
use alfeld::ratlinalg::{nullspace_basis, rank_exact, seeded_primes};
use alfeld::report::Check;
use alfeld::simplicial::{AlfeldSplit, MacroMesh, Simplex};
use alfeld::splitspaces::{
    build_space, check_exact, dimension_formula, find_potential, low_degree_checks, raw_d, vertex_smoothness_probe,
    Family, SequenceSpec, SpaceSpec,
};
use alfeld::{RatMatrix, Rational};
use rand::Rng;

type Checks = Result<Vec<Check>, alfeld::Error>;

fn dimension_formulas() -> Checks {
    let mut out = Vec::new();
    for (n, r_max) in [(2, 6), (3, 5), (4, 2)] {
        let split = AlfeldSplit::of_reference(n);
        for k in 0..=n {
            for r in 0..=r_max {
                for ring in [false, true] {
                    for f in [Family::V, Family::Vd, Family::M, Family::Md, Family::Mc, Family::Vc] {
                        let Ok(spec) = SpaceSpec::new(f, ring, k, r, n) else { continue };
                        let Ok(d) = dimension_formula(&spec) else { continue };
                        out.push(Check::eq(format!("dim/{spec}"), d, build_space(&spec, &split)?.dim() as i64));
                    }
                }
            }
        }
    }
    let split = AlfeldSplit::of_reference(3);
    for (s, d) in [
        ("Md:k0:r5", 68),
        ("Md:k1:r4", 132),
        ("Md:k2:r3", 80),
        ("Md:k3:r2", 15),
        ("Mc:k1:r4", 192),
        ("M:k2:r3", 105),
        ("Vc:k2:r3", 165),
        ("Vd:k3:r2", 40),
        ("Md:ring:k0:r5", 4),
    ] {
        out.push(Check::eq(format!("spot/{s}"), d, build_space(&s.parse()?, &split)?.dim()));
    }
    Ok(out)
}

fn exactness() -> Checks {
    let mut out = Vec::new();
    let s3 = AlfeldSplit::of_reference(3);
    let mut seqs = Vec::new();
    for r in 1..=5 {
        for which in 1..=3 {
            seqs.push((SequenceSpec::smooth3d(which, r, false)?, &s3));
        }
    }
    for which in 1..=3 {
        seqs.push((SequenceSpec::smooth3d(which, 5, true)?, &s3));
    }
    for j in 0..=3 {
        seqs.push((SequenceSpec::family(3, j, 5, true)?, &s3));
    }
    let s2 = AlfeldSplit::of_reference(2);
    for r in 1..=5 {
        for j in 0..=2 {
            seqs.push((SequenceSpec::family(2, j, r, true)?, &s2));
        }
    }
    for (seq, split) in seqs {
        let rep = check_exact(&seq, split)?;
        out.extend(rep.checks());
        if seq.name.starts_with("smooth") && seq.name.ends_with("r5") {
            let dims: Vec<usize> = rep.slots.iter().map(|s| s.dim).collect();
            let want = match seq.name.as_str() {
                "smooth1:r5" => [68, 132, 80, 15],
                "smooth2:r5" => [68, 132, 105, 40],
                _ => [68, 192, 165, 40],
            };
            out.push(Check::eq(format!("{}/dims", seq.name), want.to_vec(), dims));
        }
    }
    Ok(out)
}

fn unisolvence() -> Checks {
    let mut out = Vec::new();
    let split = AlfeldSplit::of_reference(3);
    for r in [5, 6] {
        for space in DofSpace::ALL {
            let set = build_dofset(space, r, &split)?;
            let basis = build_space(&set.target, &split)?;
            out.extend(check_unisolvence(&set, &basis)?.checks());
            if space == DofSpace::Md0 && r == 6 {
                let flagged: usize = set.disputed().iter().map(|g| g.count).sum();
                out.push(Check::eq("dofs/Md0:r6/disputed-flagged", 2, set.disputed().len()));
                out.push(Check::eq("dofs/Md0:r6/without-disputed", 104, set.len() - flagged));
            }
        }
    }
    Ok(out)
}

fn commuting() -> Checks {
    let split = AlfeldSplit::of_reference(3);
    let mut out = Vec::new();
    for d in Diagram::ALL {
        let rep = check_commute(d, 5, 20_251_015, 5, &split)?;
        out.push(Check::eq(format!("commute/{d}/identities"), 15, rep.identities.len()));
        out.push(Check::eq(format!("commute/{d}/degree"), 7, rep.identities.iter().map(|i| i.input_degree).max().unwrap_or(0)));
        out.extend(rep.checks());
    }
    Ok(out)
}

fn vertex_smoothness() -> Checks {
    let split = AlfeldSplit::of_reference(3);
    let mut out = Vec::new();
    for k in 0..=2 {
        for r in [4, 5] {
            let p = vertex_smoothness_probe(k, r, &split)?;
            out.push(Check::eq(format!("smooth-at-vertices/Md:k{k}:r{r}"), p.dim_plain, p.dim_constrained));
        }
    }
    Ok(out)
}

fn low_degree() -> Checks {
    low_degree_checks(&AlfeldSplit::of_reference(3))
}

fn global() -> Checks {
    let mut out = Vec::new();
    let modular = RankMode::Modular(seeded_primes(2, 1));
    for name in ["single-tet", "two-tets", "cube6"] {
        let mesh = MacroMesh::builtin(name)?;
        out.push(Check::eq(format!("global/{name}/euler"), 0, mesh.euler_characteristic() - 1));
        for seq in 1..=3 {
            out.extend(check_global_exact(seq, name, &mesh, 5, &modular)?.checks());
            if mesh.num_cells() <= 2 {
                out.extend(check_global_exact(seq, name, &mesh, 5, &RankMode::Exact)?.checks());
            }
        }
    }
    Ok(out)
}

/// A random closed member of `space`: a combination of the kernel of `d`.
fn random_closed(space: &alfeld::splitspaces::SpaceBasis, rng: &mut rand_chacha::ChaCha8Rng) -> PiecewiseKForm {
    let s = space.spec;
    let closed: Vec<Vec<Rational>> = if s.k == s.n {
        space.basis.clone()
    } else {
        let next = alfeld::splitspaces::RawLayout::new(s.n, s.k + 1, s.r - 1);
        let images: Vec<Vec<Rational>> = space.basis.iter().map(|v| raw_d(&space.layout, &next, v)).collect();
        let ker = nullspace_basis(&RatMatrix::from_columns(next.len(), &images));
        ker.columns().iter().map(|c| space.combine(c)).collect()
    };
    let mut v = vec![Rational::zero(); space.layout.len()];
    for b in &closed {
        let c = Rational::from_int(rng.gen_range(-4..=4));
        for (x, y) in v.iter_mut().zip(b) {
            *x += &(&c * y);
        }
    }
    space.layout.to_form(&v)
}

fn potentials() -> Checks {
    let split = AlfeldSplit::of_reference(3);
    let mut rng = common::rng(8);
    let mut out = Vec::new();
    for k in 1..=3 {
        let source = build_space(&SpaceSpec::ring(Family::Vd, k, 3, 3)?, &split)?;
        let target = SpaceSpec::ring(Family::M, k - 1, 4, 3)?;
        let tb = build_space(&target, &split)?;
        for i in 0..10 {
            let w = random_closed(&source, &mut rng);
            let name = format!("potential/{}/{i}", source.spec);
            match find_potential(&w, &target, &split) {
                Ok(rho) => {
                    let ok = !w.is_zero() && rho.d() == w && tb.contains(&rho);
                    out.push(Check::new(name, true, ok, ok));
                }
                Err(e) => out.push(Check::new(name, "potential", e.to_string(), false)),
            }
        }
    }
    Ok(out)
}

fn calculus() -> Checks {
    let mut rng = common::rng(9);
    let mut out = Vec::new();
    for n in 2..=4 {
        for k in 0..=n {
            for i in 0..3 {
                let w = common::random_form(&mut rng, n, k, 4);
                out.push(Check::new(format!("dd/n{n}:k{k}/{i}"), true, w.d().d().is_zero(), w.d().d().is_zero()));
                if k >= 2 {
                    let base: Vec<Rational> = (0..n).map(|_| Rational::new(rng.gen_range(-3..=3), 2)).collect();
                    let kk = w.koszul(&base)?.koszul(&base)?.is_zero();
                    out.push(Check::new(format!("kk/n{n}:k{k}/{i}"), true, kk, kk));
                }
                if k < n {
                    let t = common::random_simplex(&mut rng, n);
                    let face: Vec<_> = t.vertices()[..n].to_vec();
                    let ok = trace(&w.d(), &face) == trace(&w, &face).d();
                    out.push(Check::new(format!("trace-d/n{n}:k{k}/{i}"), true, ok, ok));
                }
            }
        }
    }
    for n in [2, 3] {
        let t = Simplex::reference(n);
        for r in 1..=4 {
            for k in 0..=n {
                let m = canonical_dof_matrix(&t, r, k)?;
                let ok = m.nrows() == m.ncols() && rank_exact(&m) == m.ncols();
                out.push(Check::new(format!("canonical-dofs/n{n}:r{r}:k{k}"), m.ncols(), rank_exact(&m), ok));
            }
        }
    }
    Ok(out)
}

type Criterion = (u8, &'static str, fn() -> Checks);

const CRITERIA: [Criterion; 9] = [
    (1, "dimension formulas", dimension_formulas),
    (2, "local exactness", exactness),
    (3, "DOF unisolvence at r = 5, 6", unisolvence),
    (4, "commuting diagrams", commuting),
    (5, "vertex smoothness is automatic", vertex_smoothness),
    (6, "low-degree identifications", low_degree),
    (7, "global exactness and Euler counts", global),
    (8, "potential finder", potentials),
    (9, "calculus identities", calculus),
];

fn main() -> ExitCode {
    let results: Vec<(Checks, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(_, _, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    (f(), t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut failed = 0;
    for ((id, title, _), (res, secs)) in CRITERIA.iter().zip(results) {
        match res {
            Ok(checks) => {
                let bad: Vec<&Check> = checks.iter().filter(|c| !c.status.is_pass()).collect();
                let ok = bad.is_empty() && !checks.is_empty();
                println!("{} criterion {id}: {title} ({} checks, {secs:.1}s)", if ok { "PASS" } else { "FAIL" }, checks.len());
                for c in bad {
                    println!("      {}: expected {}, computed {}", c.name, c.expected, c.computed);
                }
                failed += usize::from(!ok);
            }
            Err(e) => {
                println!("FAIL criterion {id}: {title} (error: {e})");
                failed += 1;
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
