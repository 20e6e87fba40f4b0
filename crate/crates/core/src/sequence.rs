//! Reference sequences and sequence-property checks.
//!
//! Indices reported in witnesses are 1-based, matching how rows are usually
//! written: `row[1] .. row[2k + 1]`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::engine::{evaluate, CanonicalKey, GapMultiset, MemoCache};
use crate::error::{Error, Result};

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C_j = binom(2j, j) / (j + 1)`.
pub fn catalan(j: u64) -> BigUint {
    binomial(2 * j, j) / (j + 1)
}

/// `A_1 .. A_m` of Lassalle's sequence from the signed Catalan recurrence
///
/// `A_m = (-1)^(m-1) C_m + sum_{j=1}^{m-1} (-1)^(j-1) binom(2m-1, 2m-2j-1) A_{m-j} C_j`.
///
/// Panics if a term comes out nonpositive.
pub fn lassalle_terms(m: u64) -> Vec<BigUint> {
    let mut terms: Vec<BigUint> = Vec::with_capacity(m as usize);
    let catalans: Vec<BigInt> = (0..=m).map(|j| BigInt::from(catalan(j))).collect();
    for i in 1..=m {
        let sign = |e: u64| -> i32 { if e.is_multiple_of(2) { 1 } else { -1 } };
        let mut a: BigInt = &catalans[i as usize] * sign(i - 1);
        for j in 1..i {
            let term = BigInt::from(binomial(2 * i - 1, 2 * i - 2 * j - 1))
                * BigInt::from(terms[(i - j - 1) as usize].clone())
                * &catalans[j as usize];
            a += term * sign(j - 1);
        }
        assert!(a.is_positive(), "Lassalle term A_{i} = {a} is not positive");
        terms.push(a.magnitude().clone());
    }
    terms
}

/// `A_m`, `m >= 1`.
pub fn lassalle(m: u64) -> BigUint {
    assert!(m >= 1, "Lassalle's sequence starts at A_1");
    lassalle_terms(m).pop().expect("m >= 1")
}

/// Where a property first fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Smallest failing index (1-based).
    pub index: usize,
    /// Indices of the violated inequality, when it involves three entries.
    pub triple: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// `row[i] == row[L + 1 - i]` for all `i`.
pub fn is_symmetric(row: &[BigUint]) -> Verdict {
    let len = row.len();
    match (0..len / 2).find(|&i| row[i] != row[len - 1 - i]) {
        None => Verdict::Holds,
        Some(i) => Verdict::Fails(Witness {
            index: i + 1,
            triple: None,
        }),
    }
}

/// Weakly increasing up to some peak, weakly decreasing after it.
///
/// The witness is the valley `q` of the first pattern
/// `row[p] > row[q] < row[r]`, reported as the triple `(p, q, r)`.
pub fn is_unimodal(row: &[BigUint]) -> Verdict {
    let Some(fall) = (1..row.len()).find(|&i| row[i] < row[i - 1]) else {
        return Verdict::Holds;
    };
    match (fall + 1..row.len()).find(|&i| row[i] > row[i - 1]) {
        None => Verdict::Holds,
        Some(rise) => Verdict::Fails(Witness {
            index: rise,
            triple: Some([fall, rise, rise + 1]),
        }),
    }
}

/// `row[i]^2 >= row[i-1] * row[i+1]` at every interior index, zeros included.
pub fn is_log_concave(row: &[BigUint]) -> Verdict {
    match (1..row.len().saturating_sub(1)).find(|&i| &row[i] * &row[i] < &row[i - 1] * &row[i + 1])
    {
        None => Verdict::Holds,
        Some(i) => Verdict::Fails(Witness {
            index: i + 1,
            triple: Some([i, i + 1, i + 2]),
        }),
    }
}

/// [`is_log_concave`] restricted to the span between the first and last
/// nonzero entries. Witness indices refer to the full row.
pub fn is_log_concave_on_support(row: &[BigUint]) -> Verdict {
    let Some(lo) = row.iter().position(|x| !x.is_zero()) else {
        return Verdict::Holds;
    };
    let hi = row.iter().rposition(|x| !x.is_zero()).expect("nonzero entry exists");
    match is_log_concave(&row[lo..=hi]) {
        Verdict::Holds => Verdict::Holds,
        Verdict::Fails(w) => Verdict::Fails(Witness {
            index: w.index + lo,
            triple: w.triple.map(|t| t.map(|i| i + lo)),
        }),
    }
}

/// A computed row `(A_{k+1}(l))_l` with its property verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub k: u32,
    pub row: Vec<BigUint>,
    pub symmetric: Verdict,
    pub unimodal: Verdict,
    pub log_concave: Verdict,
}

impl SequenceReport {
    /// Evaluates every verdict on `row`. With `positive_support`, the
    /// log-concavity check ignores leading and trailing zeros.
    pub fn new(k: u32, row: Vec<BigUint>, positive_support: bool) -> Self {
        assert_eq!(row.len(), 2 * k as usize + 1, "row length must be 2k + 1");
        let log_concave = if positive_support {
            is_log_concave_on_support(&row)
        } else {
            is_log_concave(&row)
        };
        SequenceReport {
            k,
            symmetric: is_symmetric(&row),
            unimodal: is_unimodal(&row),
            log_concave,
            row,
        }
    }

    /// First failing witness, in symmetric, unimodal, log-concave order.
    pub fn witness(&self) -> Option<&Witness> {
        self.symmetric
            .witness()
            .or(self.unimodal.witness())
            .or(self.log_concave.witness())
    }
}

/// Values of `A` as one root element sweeps between two fixed neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    /// `values[c - 1] = A(D0 + {c, w - c})` for `c = 1 .. w - 1`.
    pub values: Vec<BigUint>,
    pub symmetric: Verdict,
    pub unimodal: Verdict,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.symmetric.holds() && self.unimodal.holds()
    }
}

/// Sweeps a root element across the open interval between two neighbours at
/// distance `w`, with the other gaps `d0` held fixed.
pub fn sweep_check(d0: &[u32], w: u32, cache: &MemoCache) -> Result<SweepReport> {
    if w < 2 {
        return Err(Error::rejected(format!("sweep width {w} must be at least 2")));
    }
    let values = (1..w)
        .map(|c| {
            let mut gaps = d0.to_vec();
            gaps.extend([c, w - c]);
            let d = GapMultiset::new(gaps)?;
            Ok(evaluate(&crate::engine::canonicalize(&d), cache))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        symmetric: is_symmetric(&values),
        unimodal: is_unimodal(&values),
        values,
    })
}

/// All gap lists `d0` (descending, possibly empty) and widths `w` with
/// `sum(d0) + w <= max_n` that form a valid sweep.
pub fn sweep_domain(max_n: u32) -> Vec<(Vec<u32>, u32)> {
    let mut out = Vec::new();
    for total in 2..=max_n {
        for w in 2..=total {
            let rest = total - w;
            let lists = if rest == 0 {
                vec![Vec::new()]
            } else {
                crate::engine::partitions(rest)
            };
            for d0 in lists {
                let m = d0.len() as u32 + 2;
                if (total - m).is_multiple_of(2) {
                    out.push((d0, w));
                }
            }
        }
    }
    out
}

/// Canonical key for the root `{0, l}` on `2k + 2` points.
pub fn refinement_key(k: u32, l: u32) -> CanonicalKey {
    assert!((1..=2 * k + 1).contains(&l), "l out of range");
    crate::engine::canonicalize(
        &GapMultiset::new(vec![l, 2 * k + 2 - l]).expect("valid by construction"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(10), BigUint::from(16796u32));
    }

    #[test]
    fn catalan_matches_segner_recurrence() {
        let mut c = vec![BigUint::one()];
        for n in 1..40usize {
            let next = (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum();
            c.push(next);
        }
        for (j, want) in c.iter().enumerate() {
            assert_eq!(&catalan(j as u64), want);
        }
    }

    #[test]
    fn lassalle_examples() {
        let terms = lassalle_terms(4);
        assert_eq!(terms, row(&[1, 1, 5, 56]));
        assert_eq!(lassalle(1), BigUint::from(1u32));
    }

    #[test]
    fn verdict_examples() {
        let r = row(&[0, 1, 3, 1, 0]);
        assert!(is_symmetric(&r).holds());
        assert!(is_unimodal(&r).holds());
        assert!(is_log_concave(&r).holds());

        let bumpy = row(&[1, 2, 1, 2]);
        assert_eq!(
            is_unimodal(&bumpy),
            Verdict::Fails(Witness {
                index: 3,
                triple: Some([2, 3, 4])
            })
        );
        assert_eq!(is_log_concave(&row(&[1, 1, 2])).witness().unwrap().index, 2);
        assert_eq!(is_symmetric(&row(&[1, 2, 3, 1])).witness().unwrap().index, 2);
    }

    #[test]
    fn plateaus_are_unimodal() {
        assert!(is_unimodal(&row(&[1, 1, 2, 2, 2, 1, 1])).holds());
        assert!(is_unimodal(&row(&[5])).holds());
        assert!(is_unimodal(&row(&[])).holds());
        assert!(!is_unimodal(&row(&[3, 1, 1, 2])).holds());
    }

    #[test]
    fn support_restriction() {
        // Interior zero breaks log-concavity either way.
        let r = row(&[0, 2, 0, 2, 0]);
        assert!(!is_log_concave_on_support(&r).holds());
        let r = row(&[0, 0, 1, 2, 5]);
        let v = is_log_concave_on_support(&r);
        assert_eq!(v.witness().unwrap().index, 4);
        assert!(is_log_concave_on_support(&row(&[0, 0])).holds());
    }

    #[test]
    fn sweep_examples() {
        let cache = MemoCache::new();
        let s = sweep_check(&[3], 4, &cache).unwrap();
        assert_eq!(s.values.len(), 3);
        assert!(s.holds());
        let s = sweep_check(&[1], 2, &cache).unwrap();
        assert_eq!(s.values, row(&[1]));
        assert!(s.holds());
        for k in 0..6u32 {
            let s = sweep_check(&[], 2 * k + 2, &cache).unwrap();
            assert_eq!(s.values, crate::engine::refinement_row(k, &cache));
        }
    }

    #[test]
    fn sweep_rejects_parity_and_width() {
        let cache = MemoCache::new();
        assert!(matches!(sweep_check(&[4], 4, &cache), Err(Error::Rejected(_))));
        assert!(matches!(sweep_check(&[2], 2, &cache), Err(Error::Rejected(_))));
        assert!(matches!(sweep_check(&[2], 1, &cache), Err(Error::Rejected(_))));
    }
}
