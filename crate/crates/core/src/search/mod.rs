//! Exhaustive isomorph-free search: generation of uniform `t`-intersecting
//! hypergraphs under degree constraints, the line-deletion descent inside
//! projective planes, and the classification of small 2-intersecting
//! families.

mod classify;
mod descent;
mod generate;

use std::time::Duration;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, MAX_EDGES, MAX_VERTICES};

pub use classify::{verify_classification, ClassificationReport};
pub use descent::{descend, descend_with, DescentLevel, DescentMode, DescentReport, DescentState, DESCENT_ORDERS};
pub use generate::generate;

/// Largest number of candidate edges (`r`-subsets) a search may enumerate.
pub const MAX_CANDIDATES: usize = 1 << 14;

/// Constraints of a generation run. Every generated hypergraph has exactly
/// `n` vertices and `m` edges of size `r`, pairwise sharing at least `t`
/// vertices, with all degrees in `min_degree..=max_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchSpec {
    pub r: usize,
    pub t: usize,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Covering number counted as extremal.
    pub target_tau: usize,
}

impl SearchSpec {
    /// Degrees in `1..=m`; the target is `r - t + 1`, the largest covering
    /// number a `t`-intersecting `r`-uniform family can have.
    pub fn new(r: usize, t: usize, n: usize, m: usize) -> Self {
        SearchSpec {
            r,
            t,
            n,
            m,
            min_degree: 1,
            max_degree: m,
            target_tau: (r + 1).saturating_sub(t),
        }
    }

    pub fn with_degrees(mut self, min_degree: usize, max_degree: usize) -> Self {
        self.min_degree = min_degree;
        self.max_degree = max_degree;
        self
    }

    pub fn with_target(mut self, target_tau: usize) -> Self {
        self.target_tau = target_tau;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_VERTICES || self.m > MAX_EDGES {
            return Err(Error::CapacityExceeded(format!(
                "n={} m={} exceeds {MAX_VERTICES} vertices or {MAX_EDGES} edges",
                self.n, self.m
            )));
        }
        let candidates = binomial(self.n, self.r);
        if candidates > MAX_CANDIDATES {
            return Err(Error::CapacityExceeded(format!(
                "{candidates} candidate edges exceed {MAX_CANDIDATES}"
            )));
        }
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.r == 0 || self.r > self.n {
            return bad(format!("need 1 <= r <= n (r={}, n={})", self.r, self.n));
        }
        if self.t == 0 || self.t > self.r {
            return bad(format!("need 1 <= t <= r (t={}, r={})", self.t, self.r));
        }
        if self.m == 0 {
            return bad("need m >= 1".into());
        }
        if self.min_degree == 0 || self.min_degree > self.max_degree || self.max_degree > self.m {
            return bad(format!(
                "need 1 <= min_degree <= max_degree <= m (got {}..={}, m={})",
                self.min_degree, self.max_degree, self.m
            ));
        }
        let incidences = self.m * self.r;
        if self.n * self.max_degree < incidences || incidences < self.n * self.min_degree {
            return bad(format!(
                "hand-shake: n*max_degree={} >= m*r={} >= n*min_degree={} fails",
                self.n * self.max_degree,
                incidences,
                self.n * self.min_degree
            ));
        }
        Ok(())
    }
}

/// Outcome of [`generate`].
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub spec: SearchSpec,
    /// Isomorphism classes meeting the spec.
    pub class_count: usize,
    /// Classes whose covering number equals `spec.target_tau`.
    pub extremal_count: usize,
    /// One canonical representative per class, in canonical-key order.
    pub representatives: Vec<Hypergraph>,
    /// Covering number of each representative.
    pub taus: Vec<usize>,
    pub wall_time: Duration,
}

impl SearchReport {
    pub fn extremal(&self) -> impl Iterator<Item = &Hypergraph> {
        self.representatives
            .iter()
            .zip(&self.taus)
            .filter(|(_, &tau)| tau == self.spec.target_tau)
            .map(|(h, _)| h)
    }
}

/// Smallest vertex count allowing `m` edges of size `r` with degrees at most
/// `max_degree` (hand-shake).
pub fn min_vertex_bound(spec: &SearchSpec) -> usize {
    (spec.m * spec.r).div_ceil(spec.max_degree.max(1))
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_bound_examples() {
        let s = |r, m, d| SearchSpec::new(r, 1, 40, m).with_degrees(1, d);
        assert_eq!(min_vertex_bound(&s(5, 12, 4)), 15);
        assert_eq!(min_vertex_bound(&s(5, 13, 4)), 17);
        assert_eq!(min_vertex_bound(&s(4, 9, 4)), 9);
    }

    #[test]
    fn spec_validation() {
        let ok = SearchSpec::new(4, 1, 11, 9).with_degrees(2, 4);
        assert!(ok.validate().is_ok());
        assert_eq!(ok.target_tau, 4);
        assert_eq!(SearchSpec::new(5, 2, 10, 12).target_tau, 4);
        assert!(matches!(
            SearchSpec::new(4, 1, 8, 9).with_degrees(2, 4).validate(),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            SearchSpec::new(4, 1, 200, 9).validate(),
            Err(Error::CapacityExceeded(_))
        ));
        assert!(matches!(
            SearchSpec::new(20, 1, 60, 9).validate(),
            Err(Error::CapacityExceeded(_))
        ));
        assert!(SearchSpec::new(3, 0, 6, 3).validate().is_err());
        assert!(SearchSpec::new(3, 1, 6, 3).with_degrees(2, 1).validate().is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(13, 4), 715);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(128, 64), usize::MAX);
    }
}
