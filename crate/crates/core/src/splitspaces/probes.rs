use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyforms::{build_pr_lambda_k, PiecewiseKForm};
use crate::ratlinalg::{echelon_of, rank_exact, RatMatrix, Q};
use crate::report::{Check, Status};
use crate::simplicial::AlfeldSplit;

use super::build::{build_space, SpaceBasis};
use super::constraints::ConstraintBuilder;
use super::formulas::dimension_formula;
use super::layout::RawLayout;
use super::spec::{Family, SpaceSpec};

#[derive(Clone, Debug, Serialize)]
pub struct DimReport {
    pub spec: SpaceSpec,
    pub dim_computed: usize,
    pub dim_formula: Option<i64>,
    pub status: Status,
}

impl DimReport {
    pub fn check(&self) -> Check {
        Check::new(format!("dim/{}", self.spec), self.dim_formula, self.dim_computed, self.status.is_pass())
    }
}

/// Built dimension against the closed form; specs without one are an error.
pub fn verify_dimension(spec: &SpaceSpec, split: &AlfeldSplit) -> Result<DimReport> {
    let f = dimension_formula(spec)?;
    let b = build_space(spec, split)?;
    Ok(DimReport { spec: *spec, dim_computed: b.dim(), dim_formula: Some(f), status: Status::of(f == b.dim() as i64) })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub spec: SpaceSpec,
    pub order: usize,
    pub dim_plain: usize,
    pub dim_constrained: usize,
    pub status: Status,
}

/// `dim Md^k_r` with and without agreement of all derivatives of order at most
/// `2 - k` at the vertices of the split.
pub fn vertex_smoothness_probe(k: usize, r: i64, split: &AlfeldSplit) -> Result<ProbeReport> {
    if split.dim() != 3 || k > 2 {
        return Err(Error::Precondition("vertex smoothness probe needs n = 3 and k <= 2".into()));
    }
    let spec = SpaceSpec::plain(Family::Md, k, r, 3)?;
    let plain = build_space(&spec, split)?;
    let layout = RawLayout::new(3, k, r);
    let mut b = ConstraintBuilder::new(&layout, split);
    b.add_spec(&spec);
    let order = 2 - k;
    if !layout.is_empty() {
        b.vertex_jets(0, order);
    }
    let rank = echelon_of(Q, layout.len(), &b.rows).rank();
    let dim_constrained = layout.len() - rank;
    Ok(ProbeReport { spec, order, dim_plain: plain.dim(), dim_constrained, status: Status::of(plain.dim() == dim_constrained) })
}

/// Every basis element of `small` satisfies the constraints of `big`.
pub fn is_subspace(small: &SpaceBasis, big: &SpaceBasis) -> bool {
    small.layout.len() == big.layout.len() && small.basis.iter().all(|v| big.contains_vector(v))
}

/// Uniform polynomial forms `P_r Lambda^k` as piecewise forms.
pub fn polynomial_forms(n: usize, k: usize, r: i64, split: &AlfeldSplit) -> Vec<PiecewiseKForm> {
    build_pr_lambda_k(n, r, k).iter().map(|w| PiecewiseKForm::uniform(w, split.num_children())).collect()
}

/// Span equality of `a` and the given forms: all forms lie in `a` and their rank is `dim a`.
pub fn spans_equal(a: &SpaceBasis, forms: &[PiecewiseKForm]) -> bool {
    let vs: Option<Vec<_>> = forms.iter().map(|w| a.layout.to_vector(w)).collect();
    let Some(vs) = vs else { return false };
    vs.iter().all(|v| a.contains_vector(v)) && (vs.is_empty() && a.dim() == 0 || !vs.is_empty() && rank_exact(&RatMatrix::from_rows(vs)) == a.dim())
}

/// The low-degree identifications in three dimensions: `Mc^1_2 = [P_2]^3` and `Vc^2_1 = M^2_1`.
pub fn low_degree_checks(split: &AlfeldSplit) -> Result<Vec<Check>> {
    let mc = build_space(&"Mc:k1:r2".parse()?, split)?;
    let p2 = polynomial_forms(3, 1, 2, split);
    let vc = build_space(&"Vc:k2:r1".parse()?, split)?;
    let m2 = build_space(&"M:k2:r1".parse()?, split)?;
    Ok(vec![
        Check::eq("lowdeg/Mc:k1:r2/dim", 30, mc.dim()),
        Check::new("lowdeg/Mc:k1:r2=[P2]^3", true, spans_equal(&mc, &p2), spans_equal(&mc, &p2)),
        Check::eq("lowdeg/Vc:k2:r1/dim", 15, vc.dim()),
        Check::new("lowdeg/Vc:k2:r1=M:k2:r1", true, is_subspace(&vc, &m2) && is_subspace(&m2, &vc), is_subspace(&vc, &m2) && is_subspace(&m2, &vc)),
    ])
}

/// Both readings of the trimmed space `P_r^- Lambda^k(R^n)`: `(standard, literal)` dimensions.
pub fn trimmed_variants(n: usize, r: i64, k: usize) -> (usize, usize) {
    let base = vec![crate::ratlinalg::Rational::zero(); n];
    (crate::polyforms::build_pr_minus(n, r, k, &base).len(), crate::polyforms::build_pr_minus_shifted(n, r, k, &base).len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_smoothness_is_automatic() {
        let split = AlfeldSplit::of_reference(3);
        for (k, r) in [(1, 4), (0, 5), (2, 3)] {
            let p = vertex_smoothness_probe(k, r, &split).unwrap();
            assert!(p.status.is_pass(), "{p:?}");
        }
    }

    #[test]
    fn low_degree_identifications() {
        let split = AlfeldSplit::of_reference(3);
        for c in low_degree_checks(&split).unwrap() {
            assert!(c.status.is_pass(), "{c:?}");
        }
    }

    #[test]
    fn trimmed_literal_variant_is_larger() {
        let (a, b) = trimmed_variants(3, 1, 1);
        assert_eq!(a, 6);
        assert!(b > a);
    }
}
