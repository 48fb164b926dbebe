//! Brute-force cross-checks that validate identity sides by enumeration and
//! text manipulation rather than formulas.
//!
//! These deliberately use a different computational mechanism than the
//! evaluators in [`crate::identities`] — counting tuples one by one, or
//! editing binary digit strings — so that a shared bug cannot produce
//! agreement. They are desk-scale by design and refuse larger inputs with an
//! explicit error instead of silently grinding.

use itertools::Itertools;
use thiserror::Error;

use crate::dyadic::DyadicCase;
use crate::exact::ExactInt;

/// Enumeration bound for [`count_injections_hitting`].
pub const MAX_ENUMERATION_N: u64 = 10;

/// Width bound for [`dyadic_sum_by_strings`].
pub const MAX_STRING_J: u64 = 16;

/// An oracle request outside the deliberately small supported range.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("count_injections_hitting enumerates tuples and is capped at n <= {MAX_ENUMERATION_N} (got n={n})")]
    EnumerationTooLarge { n: u64 },
    #[error("count_injections_hitting requires {requires} (got {got})")]
    BadArguments { requires: &'static str, got: String },
    #[error("dyadic_sum_by_strings is capped at j <= {MAX_STRING_J} (got j={j})")]
    WidthTooLarge { j: u64 },
}

/// Counts, by direct enumeration, the ordered injective `k`-tuples over
/// `{1..n}` whose image meets the marked block `{1..m}`.
///
/// This equals `P(n, k) - P(n-m, k)` (strike out the tuples that avoid the
/// block entirely), which is the left side shared by `injection-diff` and
/// `theorem-perm`, so it cross-checks both without touching their formulas.
///
/// ```
/// use identikit::oracles::count_injections_hitting;
/// use identikit::exact::ExactInt;
///
/// // Ordered pairs over {1..4} that touch {1, 2}: all 12 minus (3,4) and (4,3).
/// assert_eq!(count_injections_hitting(2, 2, 4).unwrap(), ExactInt::from(10u64));
/// ```
pub fn count_injections_hitting(k: u64, m: u64, n: u64) -> Result<ExactInt, OracleError> {
    if n > MAX_ENUMERATION_N {
        return Err(OracleError::EnumerationTooLarge { n });
    }
    if k > n {
        return Err(OracleError::BadArguments {
            requires: "k <= n",
            got: format!("k={k}, n={n}"),
        });
    }
    if m > n {
        return Err(OracleError::BadArguments {
            requires: "m <= n",
            got: format!("m={m}, n={n}"),
        });
    }
    let hits = (1..=n)
        .permutations(k as usize)
        .filter(|tuple| tuple.iter().any(|&x| x <= m))
        .count();
    Ok(ExactInt::from(hits))
}

/// Recomputes the truncation sum of a dyadic case through digit strings: each
/// `k + i` is rendered in binary, its low `t` characters (the length of `i`'s
/// own binary rendering) are overwritten with zeros, and the edited string is
/// parsed back. No arithmetic shifts are involved.
pub fn dyadic_sum_by_strings(case: &DyadicCase) -> Result<ExactInt, OracleError> {
    if case.j() > MAX_STRING_J {
        return Err(OracleError::WidthTooLarge { j: case.j() });
    }
    let mut total: u128 = 0;
    for i in 1..=case.a() {
        let t = format!("{i:b}").len();
        let digits = format!("{:b}", case.k() + i);
        if t >= digits.len() {
            continue; // every digit cleared
        }
        let head = &digits[..digits.len() - t];
        let cleared = format!("{}{}", head, "0".repeat(t));
        total += u128::from(u64::from_str_radix(&cleared, 2).expect("binary digits"));
    }
    Ok(ExactInt::from(total))
}
