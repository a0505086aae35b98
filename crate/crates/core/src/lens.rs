//! Rho invariants of lens spaces and Pin^c eta invariants of flip-spun lens
//! spaces `X(p)`.
//!
//! For the lens space `L(n, q)` and the character `α_s` of its fundamental
//! group, the reduced eta invariant is the finite sum
//!
//! ```text
//! ρ_s(L(n,q)) = 1/n · Σ_{λ^n = 1, λ ≠ 1} (λ^s − 1) λ^q / ((λ^q − 1)(λ − 1))
//! ```
//!
//! evaluated exactly in `Q(ζ_n)` and then collapsed to a rational. The Pin^c
//! eta invariant of `X(p)` with the metric `g_{p,q}` twisted by `α_s` is the
//! difference `ρ_s(L(2p,q)) − ρ_{s+p}(L(2p,q))`. Two rearrangements of that
//! sum ([`EtaFormula`]) are implemented independently and must agree with it
//! exactly.
//!
//! Comparisons are exact rational equality throughout.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{root_of_unity, CyclicAccumulator, CyclotomicElement};
use crate::rational::{self, ExactRational};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtaError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error(
        "cyclotomic order {order} exceeds the configured limit {max} (raise {var} to allow it)"
    )]
    Resource {
        order: u32,
        max: u32,
        var: &'static str,
    },
}

fn check_order(order: u32) -> Result<(), EtaError> {
    let max = Limits::global().max_field_order;
    if order > max {
        return Err(EtaError::Resource {
            order,
            max,
            var: Limits::MAX_ORDER_VAR,
        });
    }
    Ok(())
}

/// `L(n, q)`, with `q` reduced into `0..n` and coprime to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensParams {
    n: u32,
    q: u32,
}

impl LensParams {
    pub fn new(n: u32, q: i64) -> Result<Self, EtaError> {
        if n == 0 {
            return Err(EtaError::Parameter(
                "lens space order n must be positive".into(),
            ));
        }
        if q.gcd(&(n as i64)) != 1 {
            return Err(EtaError::Parameter(format!(
                "gcd(q, n) must be 1, got q = {q}, n = {n}"
            )));
        }
        Ok(LensParams {
            n,
            q: q.rem_euclid(n as i64) as u32,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

/// Parameters of the metric `g_{p,q}` on the flip-spun lens space `X(p)`:
/// `q` odd and coprime to `2p`, reduced into `1..2p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipSpunParams {
    p: u32,
    q: u32,
}

impl FlipSpunParams {
    pub fn new(p: u32, q: i64) -> Result<Self, EtaError> {
        if p == 0 {
            return Err(EtaError::Parameter("p must be positive".into()));
        }
        let n = 2 * p as i64;
        if q.rem_euclid(2) != 1 {
            return Err(EtaError::Parameter(format!("q must be odd, got {q}")));
        }
        if q.gcd(&n) != 1 {
            return Err(EtaError::Parameter(format!(
                "gcd(q, 2p) must be 1, got q = {q}, 2p = {n}"
            )));
        }
        Ok(FlipSpunParams {
            p,
            q: q.rem_euclid(n) as u32,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The lens space `L(2p, q)` whose rho invariants make up the eta invariant.
    pub fn lens(&self) -> LensParams {
        LensParams {
            n: 2 * self.p,
            q: self.q,
        }
    }
}

/// A character `α_s` of a cyclic group, `0 <= s < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacterIndex {
    s: u32,
    modulus: u32,
}

impl CharacterIndex {
    pub fn new(s: i64, modulus: u32) -> Self {
        assert!(modulus > 0, "character group must be nontrivial");
        CharacterIndex {
            s: s.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn value(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

/// An exact real eta or rho invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaValue(ExactRational);

impl EtaValue {
    pub fn new(value: ExactRational) -> Self {
        EtaValue(value)
    }

    pub fn value(&self) -> &ExactRational {
        &self.0
    }

    pub fn into_inner(self) -> ExactRational {
        self.0
    }

    pub fn approx(&self) -> f64 {
        rational::to_f64(&self.0)
    }
}

impl fmt::Display for EtaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::to_ratio_string(&self.0))
    }
}

/// Alternative closed sums for the flip-spun eta invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaFormula {
    /// `1/p · Σ_{λ^p = −1} λ^{s+q} / ((λ^q − 1)(λ − 1))`, over the
    /// `2p`-th roots of unity that are not `p`-th roots.
    HalfRoots,
    /// `1/p · Σ_{λ^p = 1} (−1)^{s+1} λ^{s+q} / ((λ^q + 1)(λ + 1))`, obtained by
    /// `λ ↦ −λ`; only valid for odd `p`.
    OddP,
}

/// `(ζ_n^j − 1)^{-1}` for `j = 1..n`, index `j` (slot 0 unused).
fn inverses_of_root_minus_one(n: u32) -> Arc<Vec<CyclotomicElement>> {
    static CACHE: RootCache = OnceLock::new();
    cached(&CACHE, n, || {
        let one = CyclotomicElement::one(n);
        let mut v = vec![CyclotomicElement::zero(n)];
        v.extend((1..n).map(|j| {
            (&root_of_unity(n, j as i64) - &one)
                .inverse()
                .expect("ζ^j ≠ 1 for 0 < j < n")
        }));
        v
    })
}

/// `(ζ_n^j + 1)^{-1}` for `j = 0..n`; `n` must be odd so that `ζ^j ≠ −1`.
fn inverses_of_root_plus_one(n: u32) -> Arc<Vec<CyclotomicElement>> {
    static CACHE: RootCache = OnceLock::new();
    debug_assert!(n % 2 == 1);
    cached(&CACHE, n, || {
        let one = CyclotomicElement::one(n);
        (0..n)
            .map(|j| {
                (&root_of_unity(n, j as i64) + &one)
                    .inverse()
                    .expect("ζ^j ≠ −1 for odd n")
            })
            .collect()
    })
}

type RootCache = OnceLock<Mutex<HashMap<u32, Arc<Vec<CyclotomicElement>>>>>;

fn cached<F>(cache: &'static RootCache, n: u32, build: F) -> Arc<Vec<CyclotomicElement>>
where
    F: FnOnce() -> Vec<CyclotomicElement>,
{
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.lock().expect("cache poisoned").get(&n) {
        return v.clone();
    }
    let built = Arc::new(build());
    map.lock()
        .expect("cache poisoned")
        .entry(n)
        .or_insert(built)
        .clone()
}

fn collapse(e: CyclotomicElement, what: &str) -> ExactRational {
    // A non-rational result means the arithmetic is wrong, not the input.
    e.as_rational()
        .unwrap_or_else(|err| panic!("{what} failed to collapse to Q: {err}"))
}

/// The summands `λ^q / ((λ^q − 1)(λ − 1))` for `λ = ζ_n^k`, `k = 1..n`.
fn rho_summands(l: &LensParams) -> Vec<CyclotomicElement> {
    let n = l.n;
    let inv = inverses_of_root_minus_one(n);
    (1..n)
        .map(|k| {
            let kq = (k as u64 * l.q as u64 % n as u64) as usize;
            (&inv[kq] * &inv[k as usize]).mul_root(kq as i64)
        })
        .collect()
}

fn rho_from_summands(
    l: &LensParams,
    summands: &[CyclotomicElement],
    base: &CyclotomicElement,
    s: u32,
) -> EtaValue {
    let n = l.n;
    let mut acc = CyclicAccumulator::new(n);
    for (k, t) in (1..n).zip(summands) {
        acc.add_rotated(t, k as i64 * s as i64);
    }
    let sum = &acc.finish() - base;
    let r = collapse(sum, "rho sum") / BigRational::from_integer(n.into());
    EtaValue(r)
}

/// `ρ_s(L(n, q))`.
pub fn rho_lens(l: &LensParams, s: i64) -> Result<EtaValue, EtaError> {
    check_order(l.n)?;
    let s = CharacterIndex::new(s, l.n);
    let summands = rho_summands(l);
    let base = summands
        .iter()
        .fold(CyclotomicElement::zero(l.n), |a, t| &a + t);
    Ok(rho_from_summands(l, &summands, &base, s.value()))
}

/// `ρ_s(L(n, q))` for every `s = 0..n`, sharing the summands.
pub fn rho_lens_all(l: &LensParams) -> Result<Vec<EtaValue>, EtaError> {
    check_order(l.n)?;
    let summands = rho_summands(l);
    let base = summands
        .iter()
        .fold(CyclotomicElement::zero(l.n), |a, t| &a + t);
    Ok((0..l.n)
        .map(|s| rho_from_summands(l, &summands, &base, s))
        .collect())
}

/// `η(X(p), g_{p,q}, α_s) = ρ_s(L(2p,q)) − ρ_{s+p}(L(2p,q))`.
pub fn eta_flipspun(params: &FlipSpunParams, s: i64) -> Result<EtaValue, EtaError> {
    let l = params.lens();
    let p = params.p as i64;
    let a = rho_lens(&l, s)?;
    let b = rho_lens(&l, s + p)?;
    Ok(EtaValue(a.0 - b.0))
}

/// The eta invariants for all characters `s = 0..2p`.
pub fn eta_flipspun_all(params: &FlipSpunParams) -> Result<Vec<EtaValue>, EtaError> {
    let rho = rho_lens_all(&params.lens())?;
    let n = rho.len();
    let p = params.p as usize;
    Ok((0..n)
        .map(|s| EtaValue(&rho[s].0 - &rho[(s + p) % n].0))
        .collect())
}

/// The eta invariant through one of the rearranged sums.
pub fn eta_variant(
    params: &FlipSpunParams,
    s: i64,
    formula: EtaFormula,
) -> Result<EtaValue, EtaError> {
    match formula {
        EtaFormula::HalfRoots => eta_half_roots(params, s),
        EtaFormula::OddP => eta_odd_p(params, s),
    }
}

fn eta_half_roots(params: &FlipSpunParams, s: i64) -> Result<EtaValue, EtaError> {
    let n = 2 * params.p;
    check_order(n)?;
    let s = CharacterIndex::new(s, n).value() as i64;
    let q = params.q as i64;
    let inv = inverses_of_root_minus_one(n);
    let mut acc = CyclicAccumulator::new(n);
    // λ = ζ_{2p}^k with k odd are exactly the roots of λ^p = −1.
    for k in (1..n as i64).step_by(2) {
        let kq = (k * q).rem_euclid(n as i64) as usize;
        let term = &inv[kq] * &inv[k as usize];
        acc.add_rotated(&term, k * (s + q));
    }
    let r =
        collapse(acc.finish(), "half-roots eta sum") / BigRational::from_integer(params.p.into());
    Ok(EtaValue(r))
}

fn eta_odd_p(params: &FlipSpunParams, s: i64) -> Result<EtaValue, EtaError> {
    let p = params.p;
    if p % 2 == 0 {
        return Err(EtaError::Parameter(format!(
            "the odd-p formula requires p odd, got p = {p}"
        )));
    }
    check_order(2 * p)?;
    let s = CharacterIndex::new(s, 2 * p).value() as i64;
    let q = params.q as i64;
    let inv = inverses_of_root_plus_one(p);
    let mut acc = CyclicAccumulator::new(p);
    for k in 0..p as i64 {
        let kq = (k * q).rem_euclid(p as i64) as usize;
        let term = &inv[kq] * &inv[k as usize];
        acc.add_rotated(&term, k * (s + q));
    }
    let sign = if s % 2 == 1 { 1 } else { -1 };
    let r = collapse(acc.finish(), "odd-p eta sum") * BigRational::new(sign.into(), p.into());
    Ok(EtaValue(r))
}

/// The `j`-th Fourier coefficient of the eta invariants of `X(p)` with metric
/// `g_{p,q}`, together with the closed forms it must equal. All four live in
/// `Q(ζ_p)` with `ω = ζ_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierForms {
    /// `Σ_{s=0}^{p-1} (−1)^{s+1} η_s ω^{−js}`.
    pub dft: CyclotomicElement,
    /// `ω^{jq} / ((ω^{jq} + 1)(ω^j + 1))`.
    pub closed: CyclotomicElement,
    /// `1 / ((ω^{−jq} + 1)(ω^j + 1))`.
    pub reciprocal: CyclotomicElement,
    /// `(ω^{−jq} − 1)(ω^j − 1) / ((ω^{−2jq} − 1)(ω^{2j} − 1))`, a ratio of
    /// cyclotomic units.
    pub unit_ratio: CyclotomicElement,
}

impl FourierForms {
    pub fn all_equal(&self) -> bool {
        self.dft == self.closed
            && self.closed == self.reciprocal
            && self.reciprocal == self.unit_ratio
    }
}

fn check_fourier_args(params: &FlipSpunParams, j: i64) -> Result<(), EtaError> {
    let p = params.p;
    if p % 2 == 0 {
        return Err(EtaError::Parameter(format!(
            "Fourier coefficients require p odd, got p = {p}"
        )));
    }
    if j < 1 || j >= p as i64 {
        return Err(EtaError::Parameter(format!(
            "j must lie in 1..={}, got {j}",
            p as i64 - 1
        )));
    }
    Ok(())
}

/// The DFT sum `Σ_{s=0}^{p-1} (−1)^{s+1} η(X(p), g_{p,q}, α_s) ω^{−js}`.
pub fn fourier_coefficient(params: &FlipSpunParams, j: i64) -> Result<CyclotomicElement, EtaError> {
    check_fourier_args(params, j)?;
    let etas = eta_flipspun_all(params)?;
    Ok(dft_of(params.p, &etas, j))
}

fn dft_of(p: u32, etas: &[EtaValue], j: i64) -> CyclotomicElement {
    let mut acc = CyclicAccumulator::new(p);
    for (s, eta) in etas.iter().take(p as usize).enumerate() {
        let c = if s % 2 == 1 {
            eta.0.clone()
        } else {
            -eta.0.clone()
        };
        acc.add_root(&c, -j * s as i64);
    }
    acc.finish()
}

/// The DFT sum and its three closed forms.
pub fn fourier_forms(params: &FlipSpunParams, j: i64) -> Result<FourierForms, EtaError> {
    check_fourier_args(params, j)?;
    let etas = eta_flipspun_all(params)?;
    Ok(fourier_forms_from(params, &etas, j))
}

/// As [`fourier_forms`] for every `j = 1..p`, computing the eta table once.
pub fn fourier_forms_all(params: &FlipSpunParams) -> Result<Vec<FourierForms>, EtaError> {
    if params.p % 2 == 0 {
        return Err(EtaError::Parameter(format!(
            "Fourier coefficients require p odd, got p = {}",
            params.p
        )));
    }
    let etas = eta_flipspun_all(params)?;
    Ok((1..params.p as i64)
        .map(|j| fourier_forms_from(params, &etas, j))
        .collect())
}

fn fourier_forms_from(params: &FlipSpunParams, etas: &[EtaValue], j: i64) -> FourierForms {
    let p = params.p;
    let q = params.q as i64;
    let w = |k: i64| root_of_unity(p, k);
    let one = CyclotomicElement::one(p);
    let inv = |e: CyclotomicElement| e.inverse().expect("nonvanishing for odd p and 0 < j < p");

    let closed = &(&w(j * q) * &inv(&w(j * q) + &one)) * &inv(&w(j) + &one);
    let reciprocal = inv(&(&w(-j * q) + &one) * &(&w(j) + &one));
    let units_num = &(&w(-j * q) - &one) * &(&w(j) - &one);
    let units_den = &(&w(-2 * j * q) - &one) * &(&w(2 * j) - &one);
    let unit_ratio = &units_num * &inv(units_den);

    FourierForms {
        dft: dft_of(p, etas, j),
        closed,
        reciprocal,
        unit_ratio,
    }
}

/// Outcome of comparing the eta invariants of `g_{p,q}` and `g_{p,q'}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub p: u32,
    pub q: u32,
    pub q_prime: u32,
    /// Units `a` mod `2p` with `η(g_{p,q}, α_s) = η(g_{p,q'}, α_{as})` for all `s`.
    pub matches: Vec<u32>,
    /// `true` iff `matches` is empty: no relabelling of characters makes the
    /// eta invariants agree, so the metrics lie in different components.
    pub distinguishable: bool,
}

/// Units `a` modulo `m`, ascending.
pub fn units_mod(m: u32) -> Vec<u32> {
    (1..m.max(2)).filter(|a| a.gcd(&m) == 1).collect()
}

fn matching_units(p: u32, eta_q: &[EtaValue], eta_qp: &[EtaValue]) -> Vec<u32> {
    let n = 2 * p;
    units_mod(n)
        .into_iter()
        .filter(|&a| {
            (0..n).all(|s| eta_q[s as usize] == eta_qp[(a as u64 * s as u64 % n as u64) as usize])
        })
        .collect()
}

fn matching_result(
    p: u32,
    q: u32,
    qp: u32,
    eta_q: &[EtaValue],
    eta_qp: &[EtaValue],
) -> MatchingResult {
    let matches = matching_units(p, eta_q, eta_qp);
    MatchingResult {
        p,
        q,
        q_prime: qp,
        distinguishable: matches.is_empty(),
        matches,
    }
}

fn require_odd_p(p: u32) -> Result<(), EtaError> {
    if p % 2 == 0 {
        return Err(EtaError::Parameter(format!(
            "p must be odd (got {p}); the matching criterion is only established for odd p"
        )));
    }
    Ok(())
}

/// Exhaustive exact comparison of the eta invariants of `g_{p,q}` and
/// `g_{p,q'}` over all units `a` and all characters `s`.
pub fn distinguish_metrics(p: u32, q: i64, q_prime: i64) -> Result<MatchingResult, EtaError> {
    require_odd_p(p)?;
    distinguish_metrics_experimental(p, q, q_prime)
}

/// [`distinguish_metrics`] without the odd-`p` restriction. For even `p`
/// nothing is known about what the matching set should be.
pub fn distinguish_metrics_experimental(
    p: u32,
    q: i64,
    q_prime: i64,
) -> Result<MatchingResult, EtaError> {
    let a = FlipSpunParams::new(p, q)?;
    let b = FlipSpunParams::new(p, q_prime)?;
    let (ea, eb) = (eta_flipspun_all(&a)?, eta_flipspun_all(&b)?);
    Ok(matching_result(p, a.q, b.q, &ea, &eb))
}

/// Modular inverse of a unit.
pub fn inverse_mod(a: u32, m: u32) -> Option<u32> {
    let e = (a as i64).extended_gcd(&(m as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i64) as u32)
}

/// Whether `q' ≡ q^{±1} (mod 2p)`.
pub fn is_inverse_pair(p: u32, q: u32, q_prime: u32) -> bool {
    let n = 2 * p;
    let (q, qp) = (q % n, q_prime % n);
    q == qp || inverse_mod(q, n) == Some(qp)
}

/// Admissible rotation parameters: odd `q` in `1..2p` coprime to `2p`.
pub fn admissible_q(p: u32) -> Vec<u32> {
    units_mod(2 * p)
        .into_iter()
        .filter(|q| q % 2 == 1)
        .collect()
}

/// Matching sets for every ordered pair of admissible `q` values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTable {
    pub p: u32,
    pub qs: Vec<u32>,
    /// `cells[i][j]` compares `qs[i]` with `qs[j]`.
    pub cells: Vec<Vec<MatchingResult>>,
}

impl SweepTable {
    pub fn related(&self, i: usize, j: usize) -> bool {
        !self.cells[i][j].distinguishable
    }
}

/// All pairwise comparisons for odd `p`. Eta tables and cells are evaluated
/// in parallel; the output order is deterministic.
pub fn sweep(p: u32) -> Result<SweepTable, EtaError> {
    require_odd_p(p)?;
    check_order(2 * p)?;
    let qs = admissible_q(p);
    let tables: Vec<Vec<EtaValue>> = qs
        .par_iter()
        .map(|&q| eta_flipspun_all(&FlipSpunParams::new(p, q as i64)?))
        .collect::<Result<_, _>>()?;
    let cells = (0..qs.len())
        .into_par_iter()
        .map(|i| {
            (0..qs.len())
                .map(|j| matching_result(p, qs[i], qs[j], &tables[i], &tables[j]))
                .collect()
        })
        .collect();
    Ok(SweepTable { p, qs, cells })
}

/// Classes of admissible `q` whose metrics cannot be separated by eta
/// invariants. Their number bounds the number of path components of the
/// moduli space of psc metrics on `X(p)` from below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentClasses {
    pub p: u32,
    /// Each class sorted ascending; classes ordered by their least element.
    pub classes: Vec<Vec<u32>>,
}

impl ComponentClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

pub fn component_classes(p: u32) -> Result<ComponentClasses, EtaError> {
    Ok(classes_from_sweep(&sweep(p)?))
}

/// Connected components of the "not distinguishable" relation.
pub fn classes_from_sweep(table: &SweepTable) -> ComponentClasses {
    let m = table.qs.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..m {
        for j in 0..m {
            if table.related(i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<u32>> = Vec::new();
    let mut root_slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        let slot = *root_slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(table.qs[i]);
    }
    ComponentClasses {
        p: table.p,
        classes: groups,
    }
}

/// Sum of a list of eta values, convenient for antisymmetry checks.
pub fn eta_sum<'a>(values: impl IntoIterator<Item = &'a EtaValue>) -> ExactRational {
    values
        .into_iter()
        .fold(BigRational::zero(), |acc, v| acc + &v.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn fs(p: u32, q: i64) -> FlipSpunParams {
        FlipSpunParams::new(p, q).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(LensParams::new(6, 2).is_err());
        assert!(LensParams::new(0, 1).is_err());
        assert_eq!(LensParams::new(6, -1).unwrap().q(), 5);
        assert!(FlipSpunParams::new(3, 2).is_err());
        assert!(FlipSpunParams::new(3, 3).is_err());
        assert_eq!(FlipSpunParams::new(3, 7).unwrap().q(), 1);
    }

    #[test]
    fn rho_trivial_character_vanishes() {
        for (n, q) in [(2, 1), (5, 2), (12, 7)] {
            let l = LensParams::new(n, q).unwrap();
            assert_eq!(rho_lens(&l, 0).unwrap().value(), &BigRational::zero());
        }
    }

    #[test]
    fn rho_order_two() {
        let l = LensParams::new(2, 1).unwrap();
        assert_eq!(rho_lens(&l, 1).unwrap().value(), &ratio(1, 4));
    }

    #[test]
    fn rho_all_matches_single() {
        let l = LensParams::new(10, 3).unwrap();
        let all = rho_lens_all(&l).unwrap();
        for s in 0..10 {
            assert_eq!(all[s as usize], rho_lens(&l, s).unwrap());
        }
    }

    #[test]
    fn flipspun_small_value() {
        assert_eq!(eta_flipspun(&fs(3, 1), 1).unwrap().value(), &ratio(-1, 4));
        assert_eq!(
            eta_variant(&fs(3, 1), 1, EtaFormula::OddP).unwrap().value(),
            &ratio(-1, 4)
        );
    }

    #[test]
    fn odd_p_formula_rejects_even_p() {
        assert!(matches!(
            eta_variant(&fs(4, 1), 0, EtaFormula::OddP),
            Err(EtaError::Parameter(_))
        ));
        assert!(eta_variant(&fs(4, 1), 0, EtaFormula::HalfRoots).is_ok());
    }

    #[test]
    fn fourier_argument_checks() {
        assert!(fourier_coefficient(&fs(4, 1), 1).is_err());
        assert!(fourier_coefficient(&fs(5, 1), 0).is_err());
        assert!(fourier_coefficient(&fs(5, 1), 5).is_err());
    }

    #[test]
    fn distinguish_rejects_even_p() {
        assert!(matches!(
            distinguish_metrics(4, 1, 3),
            Err(EtaError::Parameter(_))
        ));
        assert!(distinguish_metrics_experimental(4, 1, 3).is_ok());
    }

    #[test]
    fn resource_limit() {
        let too_big = Limits::global().max_field_order / 2 + 1;
        assert!(matches!(
            eta_flipspun(&fs(too_big | 1, 1), 0),
            Err(EtaError::Resource { .. })
        ));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inverse_mod(3, 22), Some(15));
        assert_eq!(inverse_mod(2, 22), None);
        assert!(is_inverse_pair(7, 3, 5));
        assert!(!is_inverse_pair(5, 1, 3));
    }
}
