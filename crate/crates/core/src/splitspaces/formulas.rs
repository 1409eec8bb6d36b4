use crate::error::{Error, Result};
use crate::polyforms::{binomial as b, dim_pr_minus};

use super::spec::{Family, SpaceSpec};

fn md(n: i64, k: i64, r: i64) -> i64 {
    b(n, k + 1) * (b(r + n, n + 1) - b(r - 1, n + 1)) + b(n, k) * (b(r + n + 1, n + 1) - b(r, n + 1))
        - b(r + k, k + 1) * (b(r + n, n - k) - b(r - 1, n - k))
}

fn md_ring(n: i64, k: i64, r: i64) -> i64 {
    b(n, k + 1) * (b(r + n - 1, n + 1) - b(r - 2, n + 1)) + b(n, k) * (b(r + n, n + 1) - b(r - 1, n + 1))
        - b(r + k, k + 1) * (b(r + n - 1, n - k) - b(r - 2, n - k))
}

fn m_ring(n: i64, k: i64, r: i64) -> i64 {
    let d = b(n, k) * (b(r + n, n + 1) - b(r - 1, n + 1));
    if k == n && d > 0 {
        d - 1
    } else {
        d
    }
}

fn vd_ring(n: usize, k: usize, r: i64) -> Option<i64> {
    if k == n {
        return Some((n as i64 + 1) * b(r + n as i64, n as i64) - 1);
    }
    if r == 0 {
        return None;
    }
    Some((k..=n).map(|s| b(n as i64 + 1, s as i64) * dim_pr_minus(s, r + k as i64 - s as i64, s - k)).sum())
}

/// Closed-form dimension of a local space.
pub fn dimension_formula(spec: &SpaceSpec) -> Result<i64> {
    spec.validate()?;
    let (n, k, r) = (spec.n as i64, spec.k as i64, spec.r);
    if r < 0 {
        return Ok(0);
    }
    let none = || Err(Error::NoClosedForm(spec.to_string()));
    let d = match (spec.normalized_family(), spec.ring) {
        (Family::V, false) => (n + 1) * b(n, k) * b(r + n, n),
        (Family::Vd, false) => b(r + k, k) * (b(r + n + 1, n - k + 1) - b(r, n + 1 - k)),
        (Family::M, false) => b(n, k) * (b(r + n + 1, n + 1) - b(r, n + 1)),
        (Family::Md, false) => md(n, k, r),
        (Family::Mc, false) => {
            let p = r + 1;
            if p >= 3 {
                (p - 2) * (2 * p * p + p + 9)
            } else {
                3 * b(r + 3, 3)
            }
        }
        (Family::Vc, false) => {
            let p = r + 2;
            if p >= 3 {
                (2 * p - 5) * (p * p + p + 3)
            } else {
                3 * (b(r + 4, 4) - b(r, 4))
            }
        }
        (Family::V | Family::Vd, true) => match vd_ring(spec.n, spec.k, r) {
            Some(d) => d,
            None => return none(),
        },
        (Family::M, true) => m_ring(n, k, r),
        (Family::Md, true) => md_ring(n, k, r),
        (Family::Mc, true) => {
            let p = r + 1;
            if p < 4 {
                return none();
            }
            (p - 3) * (2 * p * p - 3 * p + 10)
        }
        (Family::Vc, true) => {
            let p = r + 2;
            if p < 4 {
                return none();
            }
            2 * p * p * p - 5 * p * p + 3 * p - 15
        }
    };
    Ok(d.max(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> i64 {
        dimension_formula(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn published_values() {
        assert_eq!(f("Md:k0:r5"), 68);
        assert_eq!(f("Md:k0:r3"), 20);
        assert_eq!(f("Md:k1:r4"), 132);
        assert_eq!(f("Md:k2:r3"), 80);
        assert_eq!(f("Md:k3:r2"), 15);
        assert_eq!(f("Mc:k1:r4"), 192);
        assert_eq!(f("M:k2:r3"), 105);
        assert_eq!(f("Vc:k2:r3"), 165);
        assert_eq!(f("Vd:k3:r2"), 40);
        assert_eq!(f("Vd:k1:r1"), 20);
        assert_eq!(f("M:k0:r1:n2"), 4);
        assert_eq!(f("Md:ring:k0:r5"), 4);
    }

    #[test]
    fn ring_formulas_are_limited() {
        assert!(dimension_formula(&"Mc:ring:k1:r2".parse().unwrap()).is_err());
        assert_eq!(f("Vd:ring:k3:r0"), 3);
    }
}
