//! Exact evaluators for both sides of every identity in the catalog, plus the
//! registry that the sweep engine and the CLI dispatch through.
//!
//! Each evaluator computes the left and right side by structurally independent
//! code paths (no shared algebraic simplification), so a bug in one side
//! cannot cancel against the other. Evaluation is permitted outside an
//! identity's stated domain — the zero conventions of [`crate::exact`] keep
//! every summand well-defined there — and the result is flagged via
//! [`VerificationRecord::in_domain`] rather than rejected, so boundary
//! behavior can be explored. Hard preconditions (negative-size sets, `n <= m`
//! where a difference of injection counts would be meaningless) are still
//! errors.
//!
//! The catalog:
//!
//! * `vandermonde` — `C(m+n, k) = sum_r C(m, r) C(n, k-r)`
//! * `li-shanlan` — `C(n+k, k)^2 = sum_r C(k, r)^2 C(n+2k-r, 2k)`
//! * `injection-diff` — `P(n, k) - P(n-m, k) = sum_{r>=1} C(k, r) P(m, r) P(n-m, k-r)`
//! * `theorem-perm` — `P(n, k) - P(n-m, k) = m * sum_{r>=1} C(k, r) P(m-r-1, r-1) P(n-m+r, k-r)`
//!   for `1 < 2k <= m`, `k <= n - m`
//! * `conjecture` — the four-factor generalization of `theorem-perm` indexed
//!   by `1 <= i <= k`; unproven, the target of counterexample sweeps
//! * `proof-reindex` — a self-contained reindexing identity
//!   (`r -> k - r + 1` swaps the two sides term by term)
//! * `dyadic` — `k * a = sum_i b_i` over binary truncations, see [`crate::dyadic`]

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dyadic::{verify_dyadic, DyadicCase};
use crate::exact::{binomial, falling_factorial, ExactInt};

/// Tag for one identity in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    Vandermonde,
    LiShanlan,
    InjectionDiff,
    TheoremPerm,
    ConjectureGen,
    ProofReindex,
    Dyadic,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::Vandermonde,
        IdentityId::LiShanlan,
        IdentityId::InjectionDiff,
        IdentityId::TheoremPerm,
        IdentityId::ConjectureGen,
        IdentityId::ProofReindex,
        IdentityId::Dyadic,
    ];

    /// The stable tag used on the command line and in serialized records.
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Vandermonde => "vandermonde",
            IdentityId::LiShanlan => "li-shanlan",
            IdentityId::InjectionDiff => "injection-diff",
            IdentityId::TheoremPerm => "theorem-perm",
            IdentityId::ConjectureGen => "conjecture",
            IdentityId::ProofReindex => "proof-reindex",
            IdentityId::Dyadic => "dyadic",
        }
    }

    /// False only for the conjectured identity; everything else has a proof,
    /// so a failure there indicates an implementation bug, not mathematics.
    pub fn proven(self) -> bool {
        !matches!(self, IdentityId::ConjectureGen)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Failed lookup of an identity tag.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown identity '{0}' (expected one of: vandermonde, li-shanlan, injection-diff, theorem-perm, conjecture, proof-reindex, dyadic)")]
pub struct UnknownIdentity(pub String);

impl FromStr for IdentityId {
    type Err = UnknownIdentity;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownIdentity(s.to_string()))
    }
}

/// One point of an identity's parameter domain, stored by parameter name.
///
/// Which fields are present is fixed by the identity's arity (see
/// [`registry_lookup`]). Serialized forms always list parameters in the
/// canonical order `j, k, m, n, i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ParamPoint {
    pub j: Option<u64>,
    pub k: Option<u64>,
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub i: Option<u64>,
}

impl ParamPoint {
    pub fn kmn(k: u64, m: u64, n: u64) -> Self {
        ParamPoint { k: Some(k), m: Some(m), n: Some(n), ..Default::default() }
    }

    pub fn kmni(k: u64, m: u64, n: u64, i: u64) -> Self {
        ParamPoint { k: Some(k), m: Some(m), n: Some(n), i: Some(i), ..Default::default() }
    }

    pub fn nk(n: u64, k: u64) -> Self {
        ParamPoint { n: Some(n), k: Some(k), ..Default::default() }
    }

    pub fn jk(j: u64, k: u64) -> Self {
        ParamPoint { j: Some(j), k: Some(k), ..Default::default() }
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        match name {
            "j" => self.j,
            "k" => self.k,
            "m" => self.m,
            "n" => self.n,
            "i" => self.i,
            _ => None,
        }
    }

    /// Present parameters in canonical `j, k, m, n, i` order.
    pub fn named(&self) -> Vec<(&'static str, u64)> {
        [
            ("j", self.j),
            ("k", self.k),
            ("m", self.m),
            ("n", self.n),
            ("i", self.i),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name, v)))
        .collect()
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, value) in self.named() {
            if !first {
                f.write_str(", ")?;
            }
            write!(f, "{name}={value}")?;
            first = false;
        }
        Ok(())
    }
}

/// The outcome of evaluating one identity at one parameter point.
///
/// `residual` is `lhs - rhs`, computed once at construction and stored; it is
/// never recomputed downstream, and `holds` is true exactly when it is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRecord {
    pub identity: IdentityId,
    pub params: ParamPoint,
    pub lhs: ExactInt,
    pub rhs: ExactInt,
    pub residual: ExactInt,
    pub holds: bool,
    pub in_domain: bool,
}

impl VerificationRecord {
    pub(crate) fn from_sides(
        identity: IdentityId,
        params: ParamPoint,
        lhs: ExactInt,
        rhs: ExactInt,
        in_domain: bool,
    ) -> Self {
        let residual = &lhs - &rhs;
        let holds = residual.is_zero();
        VerificationRecord { identity, params, lhs, rhs, residual, holds, in_domain }
    }
}

/// An evaluation request that violates an identity's preconditions or arity.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{identity} requires {requires} (got {got})")]
    Constraint {
        identity: &'static str,
        requires: &'static str,
        got: String,
    },
    #[error("{identity}: missing parameter --{name}")]
    MissingParam { identity: &'static str, name: &'static str },
    #[error("{identity}: unexpected parameter --{name}")]
    UnexpectedParam { identity: &'static str, name: &'static str },
    #[error("{identity}: parameter {name}={value} exceeds the supported magnitude 2^62")]
    TooLarge { identity: &'static str, name: &'static str, value: u64 },
}

fn constraint(identity: &'static str, requires: &'static str, got: String) -> EvalError {
    EvalError::Constraint { identity, requires, got }
}

/// Index arithmetic inside the evaluators is signed; keep parameters small
/// enough that no intermediate index can overflow.
fn idx(identity: &'static str, name: &'static str, value: u64) -> Result<i64, EvalError> {
    if value > (1u64 << 62) {
        Err(EvalError::TooLarge { identity, name, value })
    } else {
        Ok(value as i64)
    }
}

/// `P(n, k)` under the extended convention used inside summands: the empty
/// product is 1 for every `n` (even negative), and a nonempty product over a
/// base smaller than its length (again, even negative) counts zero
/// injections. Callers guarantee `k >= 0`.
fn perm_ext(n: i64, k: i64) -> ExactInt {
    debug_assert!(k >= 0);
    if k == 0 {
        ExactInt::one()
    } else if n < k {
        ExactInt::zero()
    } else {
        falling_factorial(n, k).expect("arguments checked nonnegative")
    }
}

/// `P(n, k)` for arguments already known to be nonnegative.
fn perm(n: i64, k: i64) -> ExactInt {
    falling_factorial(n, k).expect("arguments checked nonnegative")
}

/// `C(n, k)` for arguments already known to be nonnegative.
fn choose(n: i64, k: i64) -> ExactInt {
    binomial(n, k).expect("arguments checked nonnegative")
}

/// `C(m+n, k) = sum_{r=0}^{k} C(m, r) C(n, k-r)`.
pub fn eval_vandermonde(m: u64, n: u64, k: u64) -> Result<VerificationRecord, EvalError> {
    const ID: &str = "vandermonde";
    let mi = idx(ID, "m", m)?;
    let ni = idx(ID, "n", n)?;
    let ki = idx(ID, "k", k)?;

    let lhs = choose(mi + ni, ki);
    let mut rhs = ExactInt::zero();
    for r in 0..=ki {
        rhs += choose(mi, r) * choose(ni, ki - r);
    }
    Ok(VerificationRecord::from_sides(
        IdentityId::Vandermonde,
        ParamPoint::kmn(k, m, n),
        lhs,
        rhs,
        true,
    ))
}

/// `C(n+k, k)^2 = sum_{r=0}^{k} C(k, r)^2 C(n+2k-r, 2k)`.
pub fn eval_li_shanlan(n: u64, k: u64) -> Result<VerificationRecord, EvalError> {
    const ID: &str = "li-shanlan";
    let ni = idx(ID, "n", n)?;
    let ki = idx(ID, "k", k)?;

    let side = choose(ni + ki, ki);
    let lhs = &side * &side;
    let mut rhs = ExactInt::zero();
    for r in 0..=ki {
        let c = choose(ki, r);
        rhs += &c * &c * choose(ni + 2 * ki - r, 2 * ki);
    }
    Ok(VerificationRecord::from_sides(
        IdentityId::LiShanlan,
        ParamPoint::nk(n, k),
        lhs,
        rhs,
        true,
    ))
}

/// `P(n, k) - P(n-m, k) = sum_{r=1}^{k} C(k, r) P(m, r) P(n-m, k-r)`.
///
/// The left side counts ordered injective `k`-tuples from an `n`-set that hit
/// the first `m` elements at least once; the right side classifies the same
/// tuples by how many marked elements they use.
pub fn eval_injection_diff(k: u64, m: u64, n: u64) -> Result<VerificationRecord, EvalError> {
    const ID: &str = "injection-diff";
    let ki = idx(ID, "k", k)?;
    let mi = idx(ID, "m", m)?;
    let ni = idx(ID, "n", n)?;
    if k == 0 {
        return Err(constraint(ID, "k >= 1", format!("k={k}")));
    }
    if m > n {
        return Err(constraint(ID, "m <= n", format!("m={m}, n={n}")));
    }

    let lhs = perm(ni, ki) - perm(ni - mi, ki);
    let mut rhs = ExactInt::zero();
    for r in 1..=ki {
        rhs += choose(ki, r) * perm(mi, r) * perm(ni - mi, ki - r);
    }
    let in_domain = k <= n;
    Ok(VerificationRecord::from_sides(
        IdentityId::InjectionDiff,
        ParamPoint::kmn(k, m, n),
        lhs,
        rhs,
        in_domain,
    ))
}

/// `P(n, k) - P(n-m, k) = m * sum_{r=1}^{k} C(k, r) P(m-r-1, r-1) P(n-m+r, k-r)`,
/// stated for `1 < 2k <= m` and `k <= n - m`.
///
/// Points outside that domain (but satisfying `k, m >= 1`, `n > m`) are still
/// evaluated under the zero conventions and flagged `in_domain = false`.
pub fn eval_theorem_perm(k: u64, m: u64, n: u64) -> Result<VerificationRecord, EvalError> {
    const ID: &str = "theorem-perm";
    let ki = idx(ID, "k", k)?;
    let mi = idx(ID, "m", m)?;
    let ni = idx(ID, "n", n)?;
    if k == 0 {
        return Err(constraint(ID, "k >= 1", format!("k={k}")));
    }
    if m == 0 {
        return Err(constraint(ID, "m >= 1", format!("m={m}")));
    }
    if n <= m {
        return Err(constraint(ID, "n > m", format!("m={m}, n={n}")));
    }

    let lhs = perm(ni, ki) - perm(ni - mi, ki);
    let mut sum = ExactInt::zero();
    for r in 1..=ki {
        sum += choose(ki, r) * perm_ext(mi - r - 1, r - 1) * perm_ext(ni - mi + r, ki - r);
    }
    let rhs = ExactInt::from(m) * sum;
    let in_domain = 2 * ki <= mi && ki <= ni - mi;
    Ok(VerificationRecord::from_sides(
        IdentityId::TheoremPerm,
        ParamPoint::kmn(k, m, n),
        lhs,
        rhs,
        in_domain,
    ))
}

/// The conjectured generalization, indexed by `1 <= i <= k`:
///
/// `P(k, k-i) * (P(n-k, i) - P(n-k-m, i)) =
///  m * sum_{r=1}^{i} sum_{s=0}^{k-i} C(i, r) C(k-i, s)
///      P(m-r-s-1, r-1) P(r+s-1, s) P(n-k+r+s-m, i-r) P(k-r-s, k-i-s)`
///
/// stated for `1 < 2k <= n - m` and `1 < 2k <= m`. At `i = k` the `s`-sum
/// collapses to `s = 0` and both sides reduce to `theorem-perm` at
/// `(k, m, n-k)`.
pub fn eval_conjecture(k: u64, m: u64, n: u64, i: u64) -> Result<VerificationRecord, EvalError> {
    const ID: &str = "conjecture";
    let ki = idx(ID, "k", k)?;
    let mi = idx(ID, "m", m)?;
    let ni = idx(ID, "n", n)?;
    let ii = idx(ID, "i", i)?;
    if k == 0 || m == 0 || n == 0 {
        return Err(constraint(ID, "k, m, n >= 1", format!("k={k}, m={m}, n={n}")));
    }
    if i < 1 || i > k {
        return Err(constraint(ID, "1 <= i <= k", format!("k={k}, i={i}")));
    }
    if ni - ki - mi < 0 {
        return Err(constraint(ID, "n - k - m >= 0", format!("k={k}, m={m}, n={n}")));
    }

    let lhs = perm(ki, ki - ii) * (perm(ni - ki, ii) - perm(ni - ki - mi, ii));
    let mut sum = ExactInt::zero();
    for r in 1..=ii {
        for s in 0..=(ki - ii) {
            sum += choose(ii, r)
                * choose(ki - ii, s)
                * perm_ext(mi - r - s - 1, r - 1)
                * perm_ext(r + s - 1, s)
                * perm_ext(ni - ki + r + s - mi, ii - r)
                * perm_ext(ki - r - s, ki - ii - s);
        }
    }
    let rhs = ExactInt::from(m) * sum;
    let in_domain = 2 * ki <= mi && 2 * ki <= ni - mi;
    Ok(VerificationRecord::from_sides(
        IdentityId::ConjectureGen,
        ParamPoint::kmni(k, m, n, i),
        lhs,
        rhs,
        in_domain,
    ))
}

/// The two summand lists of [`eval_proof_reindex`], exposed so tests can
/// check the term-by-term correspondence `r -> k - r + 1`, not just the sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReindexTerms {
    pub left: Vec<ExactInt>,
    pub right: Vec<ExactInt>,
}

/// `sum_{r=1}^{k} C(k, r-1) P(m-r-1, r-1) P(n-m+r-1, k-r) =
///  sum_{r=1}^{k} C(k, r) P(n-m+k-r, r-1) P(m-k+r-2, k-r)`.
///
/// Substituting `r -> k - r + 1` on the right maps each right term onto the
/// left term with the same index, so the sums agree wherever the zero
/// conventions apply.
pub fn proof_reindex_terms(k: u64, m: u64, n: u64) -> Result<ReindexTerms, EvalError> {
    const ID: &str = "proof-reindex";
    let ki = idx(ID, "k", k)?;
    let mi = idx(ID, "m", m)?;
    let ni = idx(ID, "n", n)?;
    if k == 0 {
        return Err(constraint(ID, "k >= 1", format!("k={k}")));
    }
    if m < 2 {
        return Err(constraint(ID, "m >= 2", format!("m={m}")));
    }
    if n <= m {
        return Err(constraint(ID, "n > m", format!("m={m}, n={n}")));
    }

    let mut left = Vec::with_capacity(k as usize);
    let mut right = Vec::with_capacity(k as usize);
    for r in 1..=ki {
        left.push(choose(ki, r - 1) * perm_ext(mi - r - 1, r - 1) * perm_ext(ni - mi + r - 1, ki - r));
        right.push(choose(ki, r) * perm_ext(ni - mi + ki - r, r - 1) * perm_ext(mi - ki + r - 2, ki - r));
    }
    Ok(ReindexTerms { left, right })
}

/// Record form of the reindexing identity; `in_domain` marks the region
/// `m >= 2k + 2`, `k <= n - m` where the surrounding induction argument
/// invokes it.
pub fn eval_proof_reindex(k: u64, m: u64, n: u64) -> Result<VerificationRecord, EvalError> {
    let terms = proof_reindex_terms(k, m, n)?;
    let lhs: ExactInt = terms.left.into_iter().sum();
    let rhs: ExactInt = terms.right.into_iter().sum();
    let in_domain = m >= 2 * k + 2 && n - m >= k;
    Ok(VerificationRecord::from_sides(
        IdentityId::ProofReindex,
        ParamPoint::kmn(k, m, n),
        lhs,
        rhs,
        in_domain,
    ))
}

/// One registry row: how to evaluate an identity from a [`ParamPoint`] and
/// which parameters it takes.
pub struct RegistryEntry {
    pub id: IdentityId,
    /// Parameter names in the order the command line documents them.
    pub arity: &'static [&'static str],
    eval_fn: fn(&ParamPoint) -> Result<VerificationRecord, EvalError>,
    violated_fn: fn(&ParamPoint) -> Vec<&'static str>,
}

impl RegistryEntry {
    /// Checks arity (every declared parameter present, nothing extra) and
    /// evaluates.
    pub fn eval(&self, point: &ParamPoint) -> Result<VerificationRecord, EvalError> {
        self.check_arity(point)?;
        (self.eval_fn)(point)
    }

    pub fn check_arity(&self, point: &ParamPoint) -> Result<(), EvalError> {
        for name in self.arity {
            if point.get(name).is_none() {
                return Err(EvalError::MissingParam { identity: self.id.name(), name });
            }
        }
        for (name, _) in point.named() {
            if !self.arity.contains(&name) {
                return Err(EvalError::UnexpectedParam { identity: self.id.name(), name });
            }
        }
        Ok(())
    }

    /// The domain conditions this point fails, as printable requirements
    /// (empty when the point is in-domain). Assumes arity has been checked.
    pub fn violated_constraints(&self, point: &ParamPoint) -> Vec<&'static str> {
        (self.violated_fn)(point)
    }
}

fn no_constraints(_: &ParamPoint) -> Vec<&'static str> {
    Vec::new()
}

fn theorem_perm_violated(p: &ParamPoint) -> Vec<&'static str> {
    let (k, m, n) = (p.k.unwrap(), p.m.unwrap(), p.n.unwrap());
    let mut out = Vec::new();
    if 2 * k > m {
        out.push("1 < 2k <= m");
    }
    if m + k > n {
        out.push("k <= n - m");
    }
    out
}

fn conjecture_violated(p: &ParamPoint) -> Vec<&'static str> {
    let (k, m, n) = (p.k.unwrap(), p.m.unwrap(), p.n.unwrap());
    let mut out = Vec::new();
    if 2 * k > m {
        out.push("1 < 2k <= m");
    }
    if m + 2 * k > n {
        out.push("1 < 2k <= n - m");
    }
    out
}

fn injection_diff_violated(p: &ParamPoint) -> Vec<&'static str> {
    if p.k.unwrap() > p.n.unwrap() {
        vec!["k <= n"]
    } else {
        Vec::new()
    }
}

fn proof_reindex_violated(p: &ParamPoint) -> Vec<&'static str> {
    let (k, m, n) = (p.k.unwrap(), p.m.unwrap(), p.n.unwrap());
    let mut out = Vec::new();
    if m < 2 * k + 2 {
        out.push("m >= 2k + 2");
    }
    if m + k > n {
        out.push("k <= n - m");
    }
    out
}

static REGISTRY: [RegistryEntry; 7] = [
    RegistryEntry {
        id: IdentityId::Vandermonde,
        arity: &["m", "n", "k"],
        eval_fn: |p| eval_vandermonde(p.m.unwrap(), p.n.unwrap(), p.k.unwrap()),
        violated_fn: no_constraints,
    },
    RegistryEntry {
        id: IdentityId::LiShanlan,
        arity: &["n", "k"],
        eval_fn: |p| eval_li_shanlan(p.n.unwrap(), p.k.unwrap()),
        violated_fn: no_constraints,
    },
    RegistryEntry {
        id: IdentityId::InjectionDiff,
        arity: &["k", "m", "n"],
        eval_fn: |p| eval_injection_diff(p.k.unwrap(), p.m.unwrap(), p.n.unwrap()),
        violated_fn: injection_diff_violated,
    },
    RegistryEntry {
        id: IdentityId::TheoremPerm,
        arity: &["k", "m", "n"],
        eval_fn: |p| eval_theorem_perm(p.k.unwrap(), p.m.unwrap(), p.n.unwrap()),
        violated_fn: theorem_perm_violated,
    },
    RegistryEntry {
        id: IdentityId::ConjectureGen,
        arity: &["k", "m", "n", "i"],
        eval_fn: |p| eval_conjecture(p.k.unwrap(), p.m.unwrap(), p.n.unwrap(), p.i.unwrap()),
        violated_fn: conjecture_violated,
    },
    RegistryEntry {
        id: IdentityId::ProofReindex,
        arity: &["k", "m", "n"],
        eval_fn: |p| eval_proof_reindex(p.k.unwrap(), p.m.unwrap(), p.n.unwrap()),
        violated_fn: proof_reindex_violated,
    },
    RegistryEntry {
        id: IdentityId::Dyadic,
        arity: &["j", "k"],
        eval_fn: |p| {
            let case = DyadicCase::new(p.j.unwrap(), p.k.unwrap())?;
            Ok(verify_dyadic(&case))
        },
        violated_fn: no_constraints,
    },
];

/// All registry rows, in catalog order.
pub fn registry() -> &'static [RegistryEntry] {
    &REGISTRY
}

/// The registry row for one identity. Total: every `IdentityId` has a row
/// (unknown tags are rejected earlier, when parsing the tag itself).
pub fn registry_lookup(id: IdentityId) -> &'static RegistryEntry {
    REGISTRY.iter().find(|e| e.id == id).expect("registry covers every identity")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(v: u64) -> ExactInt {
        ExactInt::from(v)
    }

    #[test]
    fn vandermonde_pinned_values() {
        // Direct expansion at (m=2, n=3, k=2): C(2,0)C(3,2) + C(2,1)C(3,1) + C(2,2)C(3,0).
        let by_hand = exact(3) + exact(6) + exact(1);
        let rec = eval_vandermonde(2, 3, 2).unwrap();
        assert_eq!(rec.lhs, exact(10));
        assert_eq!(rec.rhs, by_hand);
        assert!(rec.holds && rec.in_domain);

        let rec = eval_vandermonde(0, 5, 3).unwrap();
        assert_eq!(rec.lhs, exact(10));
        assert!(rec.holds);

        // k > both sizes: the r=1 term is the only nonzero one.
        let rec = eval_vandermonde(1, 1, 2).unwrap();
        assert_eq!(rec.lhs, exact(1));
        assert!(rec.holds);
    }

    #[test]
    fn li_shanlan_pinned_values() {
        // (n=1, k=1): r=0 gives C(3,2)=3, r=1 gives C(2,2)=1; lhs = C(2,1)^2 = 4.
        let rec = eval_li_shanlan(1, 1).unwrap();
        assert_eq!(rec.lhs, exact(4));
        assert_eq!(rec.rhs, exact(3) + exact(1));
        assert!(rec.holds);

        let rec = eval_li_shanlan(0, 0).unwrap();
        assert_eq!(rec.lhs, exact(1));
        assert!(rec.holds);

        // (n=2, k=2): 15 + 20 + 1 = 36 = C(4,2)^2.
        let rec = eval_li_shanlan(2, 2).unwrap();
        assert_eq!(rec.lhs, exact(36));
        assert_eq!(rec.rhs, exact(15) + exact(20) + exact(1));
        assert!(rec.holds);
    }

    #[test]
    fn injection_diff_pinned_values() {
        // (k=2, m=2, n=4): r=1 term 2*2*2 = 8, r=2 term 1*2*1 = 2.
        let rec = eval_injection_diff(2, 2, 4).unwrap();
        assert_eq!(rec.lhs, exact(10));
        assert_eq!(rec.rhs, exact(8) + exact(2));
        assert!(rec.holds && rec.in_domain);

        // m=0 makes both sides vanish.
        let rec = eval_injection_diff(1, 0, 5).unwrap();
        assert_eq!(rec.lhs, ExactInt::zero());
        assert!(rec.holds);

        // P(6,3) - P(4,3) = 120 - 24; cross-checked by enumeration in the
        // oracles module tests.
        let rec = eval_injection_diff(3, 2, 6).unwrap();
        assert_eq!(rec.lhs, exact(96));
        assert!(rec.holds);
    }

    #[test]
    fn injection_diff_preconditions() {
        assert!(matches!(
            eval_injection_diff(2, 5, 4),
            Err(EvalError::Constraint { requires: "m <= n", .. })
        ));
        assert!(eval_injection_diff(0, 1, 4).is_err());
    }

    #[test]
    fn injection_diff_out_of_domain_flagged() {
        let rec = eval_injection_diff(5, 2, 4).unwrap();
        assert!(!rec.in_domain);
    }

    #[test]
    fn theorem_perm_pinned_values() {
        // Base case k=1: both sides equal m.
        let rec = eval_theorem_perm(1, 2, 3).unwrap();
        assert_eq!(rec.lhs, exact(2));
        assert_eq!(rec.rhs, exact(2));
        assert!(rec.holds && rec.in_domain);

        // (k=2, m=4, n=6): r=1 term 2*1*3 = 6, r=2 term 1*1*1 = 1, rhs = 4*7.
        let rec = eval_theorem_perm(2, 4, 6).unwrap();
        assert_eq!(rec.lhs, exact(28));
        assert_eq!(rec.rhs, exact(4) * (exact(6) + exact(1)));
        assert!(rec.holds && rec.in_domain);

        // (k=2, m=4, n=8): P(8,2) - P(4,2) = 56 - 12.
        let rec = eval_theorem_perm(2, 4, 8).unwrap();
        assert_eq!(rec.lhs, exact(44));
        assert!(rec.holds && rec.in_domain);
    }

    #[test]
    fn theorem_perm_out_of_domain_still_evaluates() {
        // 2k <= m fails by one; the statement happens to hold here anyway.
        let rec = eval_theorem_perm(2, 3, 8).unwrap();
        assert!(!rec.in_domain);
        assert_eq!(rec.lhs, exact(36));
        assert!(rec.holds);

        // m = 1 drives a summand base negative; the extended empty-product
        // convention keeps it well-defined.
        let rec = eval_theorem_perm(1, 1, 4).unwrap();
        assert!(!rec.in_domain);
        assert_eq!(rec.lhs, exact(1));
        assert_eq!(rec.rhs, exact(1));
    }

    #[test]
    fn theorem_perm_preconditions() {
        assert!(matches!(
            eval_theorem_perm(1, 5, 5),
            Err(EvalError::Constraint { requires: "n > m", .. })
        ));
        assert!(eval_theorem_perm(0, 4, 8).is_err());
        assert!(eval_theorem_perm(2, 0, 8).is_err());
    }

    #[test]
    fn conjecture_pinned_values() {
        // (k=1, m=2, n=4, i=1): the single (r=1, s=0) term is 1; rhs = 2*1.
        let rec = eval_conjecture(1, 2, 4, 1).unwrap();
        assert_eq!(rec.lhs, exact(2));
        assert_eq!(rec.rhs, exact(2));
        assert!(rec.holds && rec.in_domain);

        // (k=2, m=4, n=8, i=1): terms (r=1,s=0) = 1 and (r=1,s=1) = 1; rhs = 4*2.
        let rec = eval_conjecture(2, 4, 8, 1).unwrap();
        assert_eq!(rec.lhs, exact(8));
        assert_eq!(rec.rhs, exact(8));
        assert!(rec.holds && rec.in_domain);
    }

    #[test]
    fn conjecture_at_i_equals_k_reduces_to_theorem_perm() {
        let conj = eval_conjecture(2, 4, 10, 2).unwrap();
        let thm = eval_theorem_perm(2, 4, 8).unwrap();
        assert_eq!(conj.lhs, thm.lhs);
        assert_eq!(conj.rhs, thm.rhs);
        assert!(conj.holds);
    }

    #[test]
    fn conjecture_preconditions() {
        assert!(matches!(
            eval_conjecture(2, 4, 8, 3),
            Err(EvalError::Constraint { requires: "1 <= i <= k", .. })
        ));
        assert!(matches!(
            eval_conjecture(2, 4, 5, 1),
            Err(EvalError::Constraint { requires: "n - k - m >= 0", .. })
        ));
        assert!(eval_conjecture(0, 4, 8, 1).is_err());
    }

    #[test]
    fn proof_reindex_pinned_values() {
        // k=1: single term on each side, both the empty product times C(1,.).
        let rec = eval_proof_reindex(1, 2, 4).unwrap();
        assert_eq!(rec.lhs, exact(1));
        assert_eq!(rec.rhs, exact(1));
        assert!(rec.holds);

        let rec = eval_proof_reindex(2, 6, 10).unwrap();
        assert_eq!(rec.lhs, exact(10));
        assert!(rec.holds && rec.in_domain);

        let rec = eval_proof_reindex(3, 8, 14).unwrap();
        assert!(rec.holds && rec.in_domain);
    }

    #[test]
    fn proof_reindex_terms_swap_pairwise() {
        for (k, m, n) in [(2u64, 6u64, 10u64), (3, 8, 14), (4, 10, 20), (5, 12, 30)] {
            let terms = proof_reindex_terms(k, m, n).unwrap();
            for r in 1..=k as usize {
                assert_eq!(
                    terms.left[r - 1],
                    terms.right[k as usize - r],
                    "left term r={r} should equal right term k-r+1 at (k={k}, m={m}, n={n})"
                );
            }
        }
    }

    #[test]
    fn records_store_residual_once() {
        let rec = eval_theorem_perm(2, 4, 9).unwrap();
        assert_eq!(rec.residual, &rec.lhs - &rec.rhs);
        assert_eq!(rec.holds, rec.residual.is_zero());
    }

    #[test]
    fn registry_arities() {
        assert_eq!(registry_lookup(IdentityId::TheoremPerm).arity, &["k", "m", "n"]);
        assert_eq!(registry_lookup(IdentityId::ConjectureGen).arity, &["k", "m", "n", "i"]);
        assert_eq!(registry_lookup(IdentityId::Vandermonde).arity, &["m", "n", "k"]);
        assert_eq!(registry_lookup(IdentityId::Dyadic).arity, &["j", "k"]);
        assert_eq!(registry().len(), IdentityId::ALL.len());
    }

    #[test]
    fn registry_eval_checks_arity() {
        let entry = registry_lookup(IdentityId::TheoremPerm);
        let missing = ParamPoint { k: Some(1), m: Some(2), ..Default::default() };
        assert!(matches!(entry.eval(&missing), Err(EvalError::MissingParam { name: "n", .. })));

        let extra = ParamPoint { k: Some(1), m: Some(2), n: Some(3), i: Some(1), ..Default::default() };
        assert!(matches!(entry.eval(&extra), Err(EvalError::UnexpectedParam { name: "i", .. })));

        let ok = entry.eval(&ParamPoint::kmn(1, 2, 3)).unwrap();
        assert!(ok.holds);
    }

    #[test]
    fn registry_reports_violated_constraints() {
        let entry = registry_lookup(IdentityId::TheoremPerm);
        let violated = entry.violated_constraints(&ParamPoint::kmn(2, 3, 8));
        assert_eq!(violated, vec!["1 < 2k <= m"]);
        assert!(entry.violated_constraints(&ParamPoint::kmn(2, 4, 8)).is_empty());
    }

    #[test]
    fn identity_tags_roundtrip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("no-such-identity".parse::<IdentityId>().is_err());
    }
}
