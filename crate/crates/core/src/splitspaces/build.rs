use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::polyforms::PiecewiseKForm;
use crate::ratlinalg::{echelon_of, Rational, SparseRow, Q};
use crate::simplicial::{AlfeldSplit, Point};

use super::constraints::constraint_rows;
use super::layout::RawLayout;
use super::spec::SpaceSpec;

/// A space as the kernel of its constraint rows, with the canonical kernel basis.
///
/// Basis vector `j` equals one at `free[j]`, zero at the other free columns.
#[derive(Debug)]
pub struct SpaceBasis {
    pub spec: SpaceSpec,
    pub layout: RawLayout,
    pub constraints: Vec<SparseRow<Rational>>,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<Rational>>,
}

impl SpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, j: usize) -> PiecewiseKForm {
        self.layout.to_form(&self.basis[j])
    }

    pub fn elements(&self) -> Vec<PiecewiseKForm> {
        (0..self.dim()).map(|j| self.element(j)).collect()
    }

    /// Constraint residual of a raw vector.
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        self.constraints.iter().map(|row| row.iter().map(|(j, a)| a * &v[*j]).sum()).collect()
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        v.len() == self.layout.len()
            && self.constraints.iter().all(|row| row.iter().map(|(j, a)| a * &v[*j]).sum::<Rational>().is_zero())
    }

    pub fn contains(&self, w: &PiecewiseKForm) -> bool {
        self.layout.to_vector(w).is_some_and(|v| self.contains_vector(&v))
    }

    /// Coordinates of a member in the canonical basis.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.contains_vector(v).then(|| self.free.iter().map(|&j| v[j].clone()).collect())
    }

    pub fn combine(&self, c: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.layout.len()];
        for (b, x) in self.basis.iter().zip(c) {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(b) {
                if !y.is_zero() {
                    *o += &(x * y);
                }
            }
        }
        out
    }
}

type Key = (SpaceSpec, Vec<Point>);

fn cache() -> &'static Mutex<HashMap<Key, Arc<SpaceBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<SpaceBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build without consulting the memo.
pub fn build_space_uncached(spec: &SpaceSpec, split: &AlfeldSplit) -> Result<SpaceBasis> {
    spec.validate()?;
    if split.dim() != spec.n {
        return Err(crate::error::Error::InvalidSpec(format!(
            "space of dimension {} on a split of dimension {}",
            spec.n,
            split.dim()
        )));
    }
    let layout = RawLayout::new(spec.n, spec.k, spec.r);
    let constraints = constraint_rows(spec, &layout, split);
    let rref = echelon_of(Q, layout.len(), &constraints).into_rref();
    let free = rref.free_columns();
    let basis = rref.nullspace();
    Ok(SpaceBasis { spec: *spec, layout, constraints, free, basis })
}

/// Memoized per process; a finished basis is shared, concurrent builders of
/// the same key may both compute it.
pub fn build_space(spec: &SpaceSpec, split: &AlfeldSplit) -> Result<Arc<SpaceBasis>> {
    let key = (*spec, split.parent().vertices().to_vec());
    if let Some(b) = cache().lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let b = Arc::new(build_space_uncached(spec, split)?);
    Ok(cache().lock().unwrap().entry(key).or_insert(b).clone())
}
