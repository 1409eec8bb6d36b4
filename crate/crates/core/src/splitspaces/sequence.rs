use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlinalg::{rank_exact, RatMatrix, Rational};
use crate::report::{Check, Status};
use crate::simplicial::AlfeldSplit;

use super::build::{build_space, SpaceBasis};
use super::layout::RawLayout;
use super::spec::{Family, SpaceSpec};

/// Exterior derivative on raw coordinates.
pub fn raw_d(src: &RawLayout, dst: &RawLayout, v: &[Rational]) -> Vec<Rational> {
    dst.to_vector(&src.to_form(v).d()).expect("d lowers the degree by one")
}

/// Images of the basis of `a` under `d`, in the raw coordinates of `b`.
pub fn d_images(a: &SpaceBasis, b: &SpaceBasis) -> Result<Vec<Vec<Rational>>> {
    if b.spec.k != a.spec.k + 1 || b.spec.n != a.spec.n || b.spec.r != a.spec.r - 1 {
        return Err(Error::InvalidSpec(format!("d does not map {} to {}", a.spec, b.spec)));
    }
    Ok(a.basis.iter().map(|v| raw_d(&a.layout, &b.layout, v)).collect())
}

/// Matrix of `d` from the basis of `a` to coordinates in the basis of `b` (`dim b x dim a`).
pub fn d_matrix(a: &SpaceBasis, b: &SpaceBasis) -> Result<RatMatrix> {
    let imgs = d_images(a, b)?;
    let mut cols = Vec::with_capacity(imgs.len());
    for (j, img) in imgs.iter().enumerate() {
        let c = b.coordinates(img).ok_or_else(|| Error::Inclusion(format!("d of basis element {j} of {} leaves {}", a.spec, b.spec)))?;
        cols.push(c);
    }
    Ok(RatMatrix::from_columns(b.dim(), &cols))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Head {
    Constants,
    Zero,
}

impl Head {
    pub fn dim(self) -> usize {
        match self {
            Head::Constants => 1,
            Head::Zero => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceSpec {
    pub name: String,
    pub head: Head,
    pub slots: Vec<SpaceSpec>,
}

impl SequenceSpec {
    pub fn new(name: impl Into<String>, head: Head, slots: Vec<SpaceSpec>) -> Result<Self> {
        for w in slots.windows(2) {
            if w[1].k != w[0].k + 1 || w[1].r != w[0].r - 1 || w[1].n != w[0].n {
                return Err(Error::InvalidSpec(format!("{} cannot follow {}", w[1], w[0])));
            }
        }
        Ok(SequenceSpec { name: name.into(), head, slots })
    }

    /// `Md^0 -> .. -> Md^{j-1} -> M^j -> Vd^{j+1} -> .. -> Vd^n`, degree `r - k` in slot `k`.
    pub fn family(n: usize, j: usize, r: i64, ring: bool) -> Result<Self> {
        if j > n {
            return Err(Error::InvalidSpec(format!("switch index {j} exceeds {n}")));
        }
        let slots = (0..=n)
            .map(|k| {
                let f = match k.cmp(&j) {
                    std::cmp::Ordering::Less => Family::Md,
                    std::cmp::Ordering::Equal => Family::M,
                    std::cmp::Ordering::Greater => Family::Vd,
                };
                SpaceSpec::new(f, ring, k, r - k as i64, n)
            })
            .collect::<Result<_>>()?;
        let head = if ring { Head::Zero } else { Head::Constants };
        let name = format!("{}j{j}:r{r}:n{n}", if ring { "ring:" } else { "" });
        Self::new(name, head, slots)
    }

    /// The three smooth sequences in three dimensions: all `Md` (1), switching at
    /// `k = 2` (2), and the Hermite sequence `Md, Mc, Vc, Vd` (3).
    pub fn smooth3d(which: u8, r: i64, ring: bool) -> Result<Self> {
        let mut s = match which {
            1 => Self::family(3, 3, r, ring)?,
            2 => Self::family(3, 2, r, ring)?,
            3 => {
                let sl = vec![
                    SpaceSpec::new(Family::Md, ring, 0, r, 3)?,
                    SpaceSpec::new(Family::Mc, ring, 1, r - 1, 3)?,
                    SpaceSpec::new(Family::Vc, ring, 2, r - 2, 3)?,
                    SpaceSpec::new(Family::Vd, ring, 3, r - 3, 3)?,
                ];
                Self::new("", if ring { Head::Zero } else { Head::Constants }, sl)?
            }
            _ => return Err(Error::InvalidSpec(format!("no smooth sequence {which}"))),
        };
        s.name = format!("{}smooth{which}:r{r}", if ring { "ring:" } else { "" });
        Ok(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SlotReport {
    pub spec: SpaceSpec,
    pub dim: usize,
    /// Rank of the map into this slot (the head dimension for the first slot).
    pub rank_in: usize,
    pub rank_out: usize,
    pub kernel: usize,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub sequence: String,
    pub slots: Vec<SlotReport>,
    pub alternating_sum: i64,
    pub head_dim: usize,
    pub status: Status,
}

impl SequenceReport {
    pub fn checks(&self) -> Vec<Check> {
        let mut out: Vec<Check> = self
            .slots
            .iter()
            .map(|s| Check::new(format!("{}/exact@{}", self.sequence, s.spec), s.rank_in, s.kernel, s.status.is_pass()))
            .collect();
        out.push(Check::eq(format!("{}/euler", self.sequence), self.head_dim as i64, self.alternating_sum));
        out
    }
}

/// Verifies `ker d_i = im d_{i-1}` at every slot by ranks, with the head as the
/// kernel at the first slot and surjectivity at the last.
pub fn check_exact(seq: &SequenceSpec, split: &AlfeldSplit) -> Result<SequenceReport> {
    let spaces: Vec<_> = seq.slots.iter().map(|s| build_space(s, split)).collect::<Result<_>>()?;
    let mut ranks = Vec::with_capacity(spaces.len());
    for w in spaces.windows(2) {
        ranks.push(rank_exact(&d_matrix(&w[0], &w[1])?));
    }
    let mut head_ok = true;
    if seq.head == Head::Constants {
        let one = crate::polyforms::KForm::scalar(crate::polyforms::Poly::one(split.dim()));
        let c = crate::polyforms::PiecewiseKForm::uniform(&one, split.num_children());
        head_ok = spaces[0].contains(&c);
    }
    let mut slots = Vec::new();
    for (i, sp) in spaces.iter().enumerate() {
        let rank_in = if i == 0 { seq.head.dim() } else { ranks[i - 1] };
        let rank_out = ranks.get(i).copied().unwrap_or(0);
        let kernel = sp.dim() - rank_out;
        let ok = kernel == rank_in && (i > 0 || head_ok);
        slots.push(SlotReport { spec: sp.spec, dim: sp.dim(), rank_in, rank_out, kernel, status: Status::of(ok) });
    }
    let alternating_sum = spaces.iter().enumerate().map(|(i, s)| if i % 2 == 0 { s.dim() as i64 } else { -(s.dim() as i64) }).sum();
    let status = Status::of(slots.iter().all(|s| s.status.is_pass()));
    Ok(SequenceReport { sequence: seq.name.clone(), slots, alternating_sum, head_dim: seq.head.dim(), status })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_of_gradient() {
        let split = AlfeldSplit::of_reference(3);
        let a = build_space(&"Md:k0:r5".parse().unwrap(), &split).unwrap();
        let b = build_space(&"Md:k1:r4".parse().unwrap(), &split).unwrap();
        assert_eq!(rank_exact(&d_matrix(&a, &b).unwrap()), 67);
        let a = build_space(&"Md:ring:k0:r5".parse().unwrap(), &split).unwrap();
        let b = build_space(&"Md:ring:k1:r4".parse().unwrap(), &split).unwrap();
        assert_eq!(rank_exact(&d_matrix(&a, &b).unwrap()), 4);
    }

    #[test]
    fn constants_have_zero_derivative() {
        let split = AlfeldSplit::of_reference(2);
        let a = build_space(&"M:k0:r0:n2".parse().unwrap(), &split).unwrap();
        let b = build_space(&"M:k1:r-1:n2".parse().unwrap(), &split).unwrap();
        assert_eq!(d_matrix(&a, &b).unwrap().nrows(), 0);
    }

    #[test]
    fn wrong_target_is_rejected() {
        let split = AlfeldSplit::of_reference(3);
        let a = build_space(&"Vd:k1:r2".parse().unwrap(), &split).unwrap();
        let b = build_space(&"Md:k2:r1".parse().unwrap(), &split).unwrap();
        assert!(matches!(d_matrix(&a, &b), Err(Error::Inclusion(_))));
    }

    #[test]
    fn smooth_sequences_at_r5() {
        let split = AlfeldSplit::of_reference(3);
        for (w, dims) in [(1, [68, 132, 80, 15]), (2, [68, 132, 105, 40]), (3, [68, 192, 165, 40])] {
            let rep = check_exact(&SequenceSpec::smooth3d(w, 5, false).unwrap(), &split).unwrap();
            let got: Vec<usize> = rep.slots.iter().map(|s| s.dim).collect();
            assert_eq!(got, dims);
            assert_eq!(rep.alternating_sum, 1);
            assert!(rep.status.is_pass(), "{rep:?}");
        }
    }
}
