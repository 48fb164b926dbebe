//! Binary-representation machinery and the truncation-sum identity.
//!
//! Fix `j >= 1` and let `eta = 2^(j+1) - 1` (the all-ones number of `j+1`
//! bits). For `1 <= k < eta` put `a = eta - k`, and for each `i = 1..=a`
//! clear the `t` lowest bits of `k + i`, where `t` is the bit length of `i`;
//! call the result `b_i`. The identity verified here is
//!
//! ```text
//! k * a = b_1 + b_2 + ... + b_a
//! ```
//!
//! Everything is computed with shifts on fixed-width integers — values are
//! bounded by `2 * eta` once `j <= 62`, which [`DyadicCase::new`] enforces —
//! and never with floating-point logarithms.

use crate::exact::ExactInt;
use crate::identities::{EvalError, IdentityId, ParamPoint, VerificationRecord};

/// Largest supported `j`: keeps `eta = 2^(j+1) - 1` inside `u64` and the
/// products `k * a` inside `u128`.
pub const MAX_J: u64 = 62;

/// One instance `(j, k)` of the truncation-sum identity, with the derived
/// `eta` and `a`.
///
/// `eta` is always constructed from `j`; arbitrary `eta` cannot be smuggled
/// in, so the all-ones hypothesis holds structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicCase {
    j: u64,
    k: u64,
    eta: u64,
    a: u64,
}

/// One truncation term: `b` is `k + i` with its `t` lowest bits cleared,
/// `t` being the bit length of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationTerm {
    pub i: u64,
    pub t: u32,
    pub b: u64,
}

/// Which case of the width-induction a `(j, k)` pair falls into, classified
/// relative to `2^j` (the previous width's leading power). Defined for
/// `j >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InductionCase {
    /// `1 <= k < 2^j - 1`
    Low,
    /// `k = 2^j - 1`, the all-ones value of the previous width
    AllOnes,
    /// `k = 2^j`
    Power,
    /// `2^j < k < 2^(j+1) - 1`
    High,
}

impl DyadicCase {
    pub fn new(j: u64, k: u64) -> Result<Self, EvalError> {
        if j < 1 {
            return Err(EvalError::Constraint {
                identity: "dyadic",
                requires: "j >= 1",
                got: format!("j={j}"),
            });
        }
        if j > MAX_J {
            return Err(EvalError::Constraint {
                identity: "dyadic",
                requires: "j <= 62",
                got: format!("j={j}"),
            });
        }
        let eta = (1u64 << (j + 1)) - 1;
        if k < 1 || k >= eta {
            return Err(EvalError::Constraint {
                identity: "dyadic",
                requires: "1 <= k < eta = 2^(j+1) - 1",
                got: format!("j={j}, k={k}, eta={eta}"),
            });
        }
        Ok(DyadicCase { j, k, eta, a: eta - k })
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `eta = 1 + 2 + 4 + ... + 2^j`.
    pub fn eta(&self) -> u64 {
        self.eta
    }

    /// `a = eta - k`, the number of truncation terms.
    pub fn a(&self) -> u64 {
        self.a
    }

    /// The truncation terms in ascending `i`, computed lazily (a full case at
    /// large `j` has millions of terms; most callers only fold over them).
    pub fn terms(&self) -> impl Iterator<Item = TruncationTerm> + '_ {
        let k = self.k;
        (1..=self.a).map(move |i| {
            let t = bit_length_unchecked(i);
            TruncationTerm { i, t, b: truncate_low_bits(k + i, t) }
        })
    }

    /// Case split of the width induction; `None` for `j = 1` (the base width).
    pub fn induction_case(&self) -> Option<InductionCase> {
        if self.j < 2 {
            return None;
        }
        let power = 1u64 << self.j;
        Some(match self.k {
            k if k < power - 1 => InductionCase::Low,
            k if k == power - 1 => InductionCase::AllOnes,
            k if k == power => InductionCase::Power,
            _ => InductionCase::High,
        })
    }
}

fn bit_length_unchecked(i: u64) -> u32 {
    64 - i.leading_zeros()
}

/// The unique `t` with `2^(t-1) <= i < 2^t`. Errors on `i = 0`, which has no
/// such `t`.
///
/// ```
/// use identikit::dyadic::bit_length;
///
/// assert_eq!(bit_length(1).unwrap(), 1);
/// assert_eq!(bit_length(7).unwrap(), 3);
/// ```
pub fn bit_length(i: u64) -> Result<u32, EvalError> {
    if i == 0 {
        return Err(EvalError::Constraint {
            identity: "dyadic",
            requires: "i >= 1",
            got: "i=0".to_string(),
        });
    }
    Ok(bit_length_unchecked(i))
}

/// `x` with its `t` lowest binary digits cleared, i.e. `floor(x / 2^t) * 2^t`.
///
/// ```
/// use identikit::dyadic::truncate_low_bits;
///
/// assert_eq!(truncate_low_bits(5, 2), 4); // 101 -> 100
/// assert_eq!(truncate_low_bits(8, 0), 8);
/// assert_eq!(truncate_low_bits(3, 2), 0); // 011 -> 000
/// ```
pub fn truncate_low_bits(x: u64, t: u32) -> u64 {
    if t >= 64 {
        0
    } else {
        (x >> t) << t
    }
}

/// All `a` truncation terms of a case, ordered by `i` ascending.
pub fn compute_terms(case: &DyadicCase) -> Vec<TruncationTerm> {
    case.terms().collect()
}

/// Checks `k * a = sum b_i` for one case and reports it as a record
/// (`lhs = k * a`, `rhs` the truncation sum).
pub fn verify_dyadic(case: &DyadicCase) -> VerificationRecord {
    let lhs = u128::from(case.k) * u128::from(case.a);
    let rhs: u128 = case.terms().map(|term| u128::from(term.b)).sum();
    VerificationRecord::from_sides(
        IdentityId::Dyadic,
        ParamPoint::jk(case.j, case.k),
        ExactInt::from(lhs),
        ExactInt::from(rhs),
        true,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(case: &DyadicCase) -> Vec<u64> {
        case.terms().map(|t| t.b).collect()
    }

    #[test]
    fn bit_length_pinned_values() {
        assert_eq!(bit_length(1).unwrap(), 1);
        assert_eq!(bit_length(2).unwrap(), 2);
        assert_eq!(bit_length(7).unwrap(), 3);
        assert!(bit_length(0).is_err());
    }

    #[test]
    fn bit_length_brackets_its_argument() {
        for i in 1..=4096u64 {
            let t = bit_length(i).unwrap();
            assert!(1u64 << (t - 1) <= i && i < 1u64 << t, "i={i}, t={t}");
        }
    }

    #[test]
    fn truncate_pinned_values() {
        assert_eq!(truncate_low_bits(5, 2), 4);
        assert_eq!(truncate_low_bits(8, 0), 8);
        assert_eq!(truncate_low_bits(3, 2), 0);
        assert_eq!(truncate_low_bits(u64::MAX, 64), 0);
    }

    #[test]
    fn base_width_cases_match_worked_values() {
        // j=1, k=1: a=2, b = (2, 0), sum 2 = k*a.
        let case = DyadicCase::new(1, 1).unwrap();
        assert_eq!(case.eta(), 3);
        assert_eq!(case.a(), 2);
        assert_eq!(bs(&case), vec![2, 0]);
        let rec = verify_dyadic(&case);
        assert_eq!(rec.lhs, ExactInt::from(2u64));
        assert!(rec.holds);

        // j=1, k=2: a=1, b = (2,), sum 2 = k*a.
        let case = DyadicCase::new(1, 2).unwrap();
        assert_eq!(bs(&case), vec![2]);
        assert!(verify_dyadic(&case).holds);
    }

    #[test]
    fn wider_cases_match_hand_truncations() {
        // j=2, k=3: truncate 4, 5, 6, 7 by t = 1, 2, 2, 3.
        let case = DyadicCase::new(2, 3).unwrap();
        assert_eq!(bs(&case), vec![4, 4, 4, 0]);
        let rec = verify_dyadic(&case);
        assert_eq!(rec.lhs, ExactInt::from(12u64));
        assert!(rec.holds);

        // j=2, k=4 = 2^j: every b_i is the leading power.
        let case = DyadicCase::new(2, 4).unwrap();
        assert_eq!(bs(&case), vec![4, 4, 4]);
        let rec = verify_dyadic(&case);
        assert_eq!(rec.lhs, ExactInt::from(12u64));
        assert!(rec.holds);
    }

    #[test]
    fn all_ones_minus_one_boundary() {
        // k = eta - 1 leaves a single term b_1 = eta with its lowest bit
        // cleared, which is eta - 1 = k.
        for j in 1..=10 {
            let eta = (1u64 << (j + 1)) - 1;
            let case = DyadicCase::new(j, eta - 1).unwrap();
            assert_eq!(bs(&case), vec![eta - 1]);
            assert!(verify_dyadic(&case).holds);
        }
    }

    #[test]
    fn exhaustive_small_widths_hold_with_term_bounds() {
        for j in 1..=8 {
            let eta = (1u64 << (j + 1)) - 1;
            for k in 1..eta {
                let case = DyadicCase::new(j, k).unwrap();
                for term in case.terms() {
                    let block = 1u64 << term.t;
                    assert_eq!(term.b % block, 0);
                    assert!(term.b <= k + term.i && k + term.i < term.b + block);
                }
                assert!(verify_dyadic(&case).holds, "j={j}, k={k}");
            }
        }
    }

    #[test]
    fn induction_cases_partition_and_are_nonempty() {
        use std::collections::HashMap;
        assert_eq!(DyadicCase::new(1, 1).unwrap().induction_case(), None);
        for j in 2..=8 {
            let eta = (1u64 << (j + 1)) - 1;
            let mut seen: HashMap<InductionCase, u64> = HashMap::new();
            for k in 1..eta {
                let case = DyadicCase::new(j, k).unwrap().induction_case().unwrap();
                *seen.entry(case).or_default() += 1;
            }
            for case in [InductionCase::Low, InductionCase::AllOnes, InductionCase::Power, InductionCase::High] {
                assert!(seen.contains_key(&case), "j={j} missing {case:?}");
            }
            assert_eq!(seen.values().sum::<u64>(), eta - 1);
            assert_eq!(seen[&InductionCase::AllOnes], 1);
            assert_eq!(seen[&InductionCase::Power], 1);
        }
    }

    #[test]
    fn construction_rejects_out_of_range() {
        assert!(DyadicCase::new(0, 1).is_err());
        assert!(DyadicCase::new(63, 1).is_err());
        assert!(DyadicCase::new(1, 0).is_err());
        assert!(DyadicCase::new(1, 3).is_err()); // k = eta
        assert!(DyadicCase::new(2, 7).is_err());
    }
}
