//! Wall-crossing bookkeeping for the 1-parameter Seiberg–Witten invariant on a
//! `b_+ = 1` summand.
//!
//! Period points are rational rays in the positive cone of a signature `(1, k)`
//! lattice. The wall of reducible solutions is the hyperplane orthogonal to
//! `c₁ + perturbation`, transversally oriented so that a path crossing it from
//! negative to positive pairing counts `+1`. A diffeomorphism acts on period
//! points through the form-adjoint `f*` of its action on `H_2`, and `SW_tot`
//! is the signed number of wall crossings along the path through the orbit
//! points `(f*)^n ω₀`, times the oracle value `SW(Γ_X)`. Step `n` is the
//! segment from `(f*)^n ω₀` to `(f*)^{n+1} ω₀`.
//!
//! The count between two points only depends on the endpoints, so orbit
//! points are joined by straight segments and every decision is a sign of an
//! exact rational.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    alpha_invariant, sw_formal_dimension, IntegralLattice, Isometry, LatticeError, LatticeVector,
};
use crate::linalg;
use crate::rational::{self, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("point is not in the positive cone: {0}")]
    ConeViolation(String),
    #[error("wall class c1 + perturbation is zero")]
    ZeroWall,
    #[error("segment endpoint lies on the wall; choose a generic point")]
    NonGenericEndpoint,
    #[error("orbit point {step} lies on the wall; perturb the starting point")]
    NonGeneric { step: i64 },
    #[error("wall signs did not stabilize within {n_max} steps (window {window})")]
    Stabilization { n_max: u32, window: u32 },
    #[error("expected exactly one crossing along the orbit, found {count}")]
    Uniqueness { count: usize },
    #[error("alpha(f) = -1: the orbit sum needs f to preserve the positive cone component")]
    AlphaNegative,
    #[error("orbit of the spin^c structure is finite (size {size}); use the finite-orbit formula")]
    FiniteOrbit { size: u32 },
    #[error("lattice has signature ({positive}, {negative}) with {degenerate} degenerate directions, expected (1, 2)")]
    WrongSignature {
        positive: usize,
        negative: usize,
        degenerate: usize,
    },
    #[error("{0}")]
    Parameter(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A rational ray `ω` with `q(ω) > 0` and `ω · s > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodPoint {
    #[serde(with = "rational::serde_ratio::vec")]
    coords: Vec<ExactRational>,
}

impl PeriodPoint {
    pub fn new(lattice: &IntegralLattice, coords: Vec<ExactRational>) -> Result<Self, WallError> {
        let p = PeriodPoint { coords };
        check_cone(lattice, &p.coords)?;
        Ok(p)
    }

    pub fn from_integers(lattice: &IntegralLattice, coords: &[i64]) -> Result<Self, WallError> {
        Self::new(
            lattice,
            coords.iter().map(|&x| rational::integer(x)).collect(),
        )
    }

    pub fn coords(&self) -> &[ExactRational] {
        &self.coords
    }

    /// `λ ω` for `λ > 0`.
    pub fn scaled(&self, lambda: &ExactRational) -> Result<Self, WallError> {
        if !lambda.is_positive() {
            return Err(WallError::Parameter(
                "rays may only be rescaled by positive factors".into(),
            ));
        }
        Ok(PeriodPoint {
            coords: self.coords.iter().map(|c| c * lambda).collect(),
        })
    }
}

fn check_cone(lattice: &IntegralLattice, coords: &[ExactRational]) -> Result<(), WallError> {
    let s = lattice
        .positive_class()
        .ok_or(LatticeError::NoPositiveClass)?;
    let q = lattice.pairing_q(coords, coords)?;
    if !q.is_positive() {
        return Err(WallError::ConeViolation(format!(
            "q(ω) = {q} is not positive"
        )));
    }
    let ps = lattice.pairing_q(coords, &s.to_rational())?;
    if !ps.is_positive() {
        return Err(WallError::ConeViolation(format!(
            "ω · s = {ps} is not positive"
        )));
    }
    Ok(())
}

/// The wall `{ω : ω · (c₁ + perturbation) = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallClass {
    c1: LatticeVector,
    #[serde(with = "rational::serde_ratio::vec")]
    perturbation: Vec<ExactRational>,
}

impl WallClass {
    pub fn new(c1: LatticeVector, perturbation: Vec<ExactRational>) -> Result<Self, WallError> {
        if perturbation.len() != c1.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: c1.rank(),
                found: perturbation.len(),
            }
            .into());
        }
        let w = WallClass { c1, perturbation };
        if w.vector().iter().all(Zero::is_zero) {
            return Err(WallError::ZeroWall);
        }
        Ok(w)
    }

    pub fn unperturbed(c1: LatticeVector) -> Result<Self, WallError> {
        let n = c1.rank();
        Self::new(c1, vec![BigRational::zero(); n])
    }

    pub fn c1(&self) -> &LatticeVector {
        &self.c1
    }

    pub fn perturbation(&self) -> &[ExactRational] {
        &self.perturbation
    }

    /// `c₁ + perturbation`.
    pub fn vector(&self) -> Vec<ExactRational> {
        self.c1
            .to_rational()
            .into_iter()
            .zip(&self.perturbation)
            .map(|(a, b)| a + b)
            .collect()
    }
}

/// The spin^c data on `Z = X # N`: `c₁` on the `N` summand and the oracle
/// value `SW(Γ_X)` of a zero-dimensional moduli space on `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinCData {
    c1_n: LatticeVector,
    sw_x: i64,
    dim_x: i64,
}

impl SpinCData {
    /// Validates `dim_X = 0` and that the `N` summand (Euler characteristic
    /// `rank + 2`, signature of the form) has formal dimension −2, so that the
    /// connected sum has formal dimension −1.
    pub fn new(
        lattice: &IntegralLattice,
        c1_n: LatticeVector,
        sw_x: i64,
        dim_x: i64,
    ) -> Result<Self, WallError> {
        if dim_x != 0 {
            return Err(WallError::Parameter(format!(
                "dim M(Γ_X) must be 0, got {dim_x}"
            )));
        }
        let c1_sq = lattice.square(&c1_n)?;
        let (pos, neg, _) = lattice.signature();
        let dim_n = sw_formal_dimension(c1_sq, lattice.rank() as i64 + 2, pos as i64 - neg as i64)?;
        if dim_n != -2 {
            return Err(WallError::Parameter(format!(
                "formal dimension on the N summand must be -2, got {dim_n} (c1^2 = {c1_sq})"
            )));
        }
        Ok(SpinCData { c1_n, sw_x, dim_x })
    }

    pub fn c1(&self) -> &LatticeVector {
        &self.c1_n
    }

    pub fn sw_x(&self) -> i64 {
        self.sw_x
    }

    pub fn dim_x(&self) -> i64 {
        self.dim_x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitConfig {
    /// Orbit points are visited for steps `-n_max ..= n_max + 1`.
    pub n_max: u32,
    /// Number of consecutive constant signs required at each end.
    pub window: u32,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            n_max: 1000,
            window: 16,
        }
    }
}

/// Signed crossings along an orbit path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    /// Nonzero crossings `n ↦ ±1` of the segment from point `n` to point `n+1`.
    pub crossings: BTreeMap<i64, i8>,
    pub sw_x: i64,
    /// `sw_x · Σ crossings`.
    pub total: i64,
    pub stabilized: bool,
    /// Number of orbit points evaluated.
    pub steps_used: u64,
}

impl OrbitSummary {
    pub fn nonzero_count(&self) -> usize {
        self.crossings.len()
    }
}

/// `ω · (c₁ + perturbation)`; zero exactly on the wall.
pub fn wall_evaluate(
    lattice: &IntegralLattice,
    wall: &WallClass,
    omega: &PeriodPoint,
) -> Result<ExactRational, WallError> {
    check_cone(lattice, &omega.coords)?;
    Ok(lattice.pairing_q(&omega.coords, &wall.vector())?)
}

/// `(sgn⟨v,w⟩ − sgn⟨u,w⟩)/2`: `+1` when the segment from `u` to `v` crosses
/// from the negative to the positive side.
pub fn segment_crossing(
    lattice: &IntegralLattice,
    u: &PeriodPoint,
    v: &PeriodPoint,
    wall: &WallClass,
) -> Result<i8, WallError> {
    let su = rational::sign(&wall_evaluate(lattice, wall, u)?);
    let sv = rational::sign(&wall_evaluate(lattice, wall, v)?);
    if su == 0 || sv == 0 {
        return Err(WallError::NonGenericEndpoint);
    }
    Ok((sv - su) / 2)
}

/// Raw orbit trace under the cohomological action `f* = adjoint(f)`: wall
/// signs at every visited point and the resulting crossings.
struct OrbitTrace {
    /// `signs[i]` is the sign at step `i as i64 - n_max`.
    signs: Vec<i8>,
    n_max: i64,
}

fn trace_orbit(
    lattice: &IntegralLattice,
    f: &Isometry,
    wall: &WallClass,
    omega0: &PeriodPoint,
    cfg: &OrbitConfig,
) -> Result<OrbitTrace, WallError> {
    if cfg.window == 0 || cfg.window > cfg.n_max {
        return Err(WallError::Parameter(format!(
            "window must lie in 1..=n_max, got window {} with n_max {}",
            cfg.window, cfg.n_max
        )));
    }
    check_cone(lattice, &omega0.coords)?;
    let forward = f.adjoint(lattice)?;
    let backward = forward.inverse();
    let w = wall.vector();
    let n_max = cfg.n_max as i64;

    // Signs are scale-invariant: iterate an integral multiple of ω₀ and pair
    // with an integral positive multiple of the covector `G w`.
    let ray = integral_multiple(&omega0.coords);
    let g = lattice.gram();
    let covector: Vec<BigRational> = (0..w.len())
        .map(|i| {
            (0..w.len()).fold(BigRational::zero(), |acc, j| {
                acc + &w[j] * BigInt::from(g[i][j])
            })
        })
        .collect();
    let covector = integral_multiple(&covector);
    let sign_at = |v: &[BigInt], step: i64| -> Result<i8, WallError> {
        let value: BigInt = v.iter().zip(&covector).map(|(a, b)| a * b).sum();
        match value.sign() {
            Sign::NoSign => Err(WallError::NonGeneric { step }),
            Sign::Plus => Ok(1),
            Sign::Minus => Ok(-1),
        }
    };

    let mut back_signs = Vec::with_capacity(cfg.n_max as usize);
    let mut v = ray.clone();
    for step in 1..=n_max {
        v = apply_integral(&backward, &v);
        back_signs.push(sign_at(&v, -step)?);
    }
    let mut signs: Vec<i8> = back_signs.into_iter().rev().collect();
    let mut v = ray;
    signs.push(sign_at(&v, 0)?);
    for step in 1..=n_max + 1 {
        v = apply_integral(&forward, &v);
        signs.push(sign_at(&v, step)?);
    }
    Ok(OrbitTrace { signs, n_max })
}

/// `λ · coords` with the least `λ > 0` making every entry an integer.
fn integral_multiple(coords: &[BigRational]) -> Vec<BigInt> {
    let den = coords.iter().fold(BigInt::from(1), |l, c| l.lcm(c.denom()));
    coords
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect()
}

fn apply_integral(f: &Isometry, v: &[BigInt]) -> Vec<BigInt> {
    f.matrix()
        .iter()
        .map(|row| row.iter().zip(v).map(|(&m, x)| x * m).sum())
        .collect()
}

impl OrbitTrace {
    fn crossings(&self) -> BTreeMap<i64, i8> {
        self.signs
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] != w[1])
            .map(|(i, w)| (i as i64 - self.n_max, (w[1] - w[0]) / 2))
            .collect()
    }

    fn stabilized(&self, window: u32) -> bool {
        let k = window as usize;
        let head = &self.signs[..k];
        let tail = &self.signs[self.signs.len() - k..];
        head.iter().all(|&s| s == head[0]) && tail.iter().all(|&s| s == tail[0])
    }

    fn summary(&self, sw_x: i64, window: u32) -> OrbitSummary {
        let crossings = self.crossings();
        let raw: i64 = crossings.values().map(|&c| c as i64).sum();
        OrbitSummary {
            crossings,
            sw_x,
            total: sw_x * raw,
            stabilized: self.stabilized(window),
            steps_used: self.signs.len() as u64,
        }
    }
}

/// Crossings along the orbit of `omega0`, reported even when the wall signs
/// have not stabilized.
pub fn orbit_crossings(
    lattice: &IntegralLattice,
    f: &Isometry,
    wall: &WallClass,
    spinc: &SpinCData,
    omega0: &PeriodPoint,
    cfg: &OrbitConfig,
) -> Result<OrbitSummary, WallError> {
    if alpha_invariant(lattice, f)? != 1 {
        return Err(WallError::AlphaNegative);
    }
    Ok(trace_orbit(lattice, f, wall, omega0, cfg)?.summary(spinc.sw_x, cfg.window))
}

/// `SW_tot(f, Γ)` as `SW(Γ_X)` times the signed number of wall crossings
/// along the orbit path.
pub fn orbit_swtot(
    lattice: &IntegralLattice,
    f: &Isometry,
    wall: &WallClass,
    spinc: &SpinCData,
    omega0: &PeriodPoint,
    cfg: &OrbitConfig,
) -> Result<OrbitSummary, WallError> {
    let summary = orbit_crossings(lattice, f, wall, spinc, omega0, cfg)?;
    if !summary.stabilized {
        return Err(WallError::Stabilization {
            n_max: cfg.n_max,
            window: cfg.window,
        });
    }
    Ok(summary)
}

/// The unique step `n` whose segment crosses the wall.
pub fn unique_crossing_index(
    lattice: &IntegralLattice,
    f: &Isometry,
    wall: &WallClass,
    spinc: &SpinCData,
    omega0: &PeriodPoint,
    cfg: &OrbitConfig,
) -> Result<i64, WallError> {
    let summary = orbit_swtot(lattice, f, wall, spinc, omega0, cfg)?;
    match summary.crossings.keys().collect::<Vec<_>>().as_slice() {
        [n] => Ok(**n),
        other => Err(WallError::Uniqueness { count: other.len() }),
    }
}

/// Size of the orbit of a class under the cohomological action, if it
/// returns within `bound` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpinCOrbit {
    Finite {
        size: u32,
    },
    /// No return within `bound` steps; treated as infinite.
    InfiniteWithinBound {
        bound: u32,
    },
}

pub fn spinc_orbit(
    lattice: &IntegralLattice,
    f: &Isometry,
    c1: &LatticeVector,
    bound: u32,
) -> Result<SpinCOrbit, WallError> {
    let action = f.adjoint(lattice)?;
    let start = c1.to_rational();
    let mut v = start.clone();
    for n in 1..=bound {
        v = action.apply_q(&v)?;
        if v == start {
            return Ok(SpinCOrbit::Finite { size: n });
        }
    }
    Ok(SpinCOrbit::InfiniteWithinBound { bound })
}

/// `SW_tot(f^d, Γ)` for an infinite spin^c orbit; equals `SW_tot(f, Γ)` for
/// `d > 0` and its negative for `d < 0`.
#[allow(clippy::too_many_arguments)]
pub fn power_swtot(
    lattice: &IntegralLattice,
    f: &Isometry,
    d: i64,
    wall: &WallClass,
    spinc: &SpinCData,
    omega0: &PeriodPoint,
    cfg: &OrbitConfig,
) -> Result<i64, WallError> {
    if d == 0 {
        return Err(WallError::Parameter("power d must be nonzero".into()));
    }
    if let SpinCOrbit::Finite { size } = spinc_orbit(lattice, f, spinc.c1(), cfg.n_max)? {
        return Err(WallError::FiniteOrbit { size });
    }
    let fd = f.power(d)?;
    Ok(orbit_swtot(lattice, &fd, wall, spinc, omega0, cfg)?.total)
}

/// `SW_tot(f_d, Γ)` for a spin^c orbit of size `N`, where `edge_values[k]` is
/// the contribution `SW(Γ; f_k^* h)` of the `k`-th path segment.
///
/// The path for `f_d` concatenates `d` consecutive segments; walking it once
/// around the `f_d`-orbit visits each segment `lcm(d, N)/N` times. The
/// multiplicities are counted explicitly and checked against that formula.
pub fn finite_orbit_swtot(
    orbit_size: usize,
    edge_values: &[i64],
    d: usize,
) -> Result<i64, WallError> {
    if orbit_size == 0 || d == 0 {
        return Err(WallError::Parameter(
            "orbit size and d must be positive".into(),
        ));
    }
    if edge_values.len() != orbit_size {
        return Err(WallError::Parameter(format!(
            "expected {orbit_size} edge values, got {}",
            edge_values.len()
        )));
    }
    let n = orbit_size;
    // Orbit of Γ under f_d has N / gcd(d, N) elements; each contributes the
    // d segments f_{dk}, …, f_{dk+d-1}.
    let fd_orbit = n / n.gcd(&d);
    let mut multiplicity = vec![0usize; n];
    for k in 0..fd_orbit {
        for i in 0..d {
            multiplicity[(d * k + i) % n] += 1;
        }
    }
    let walked: i64 = multiplicity
        .iter()
        .zip(edge_values)
        .map(|(&m, &e)| m as i64 * e)
        .sum();
    let factor = (d.lcm(&n) / n) as i64;
    let formula = factor * edge_values.iter().sum::<i64>();
    assert!(
        multiplicity.iter().all(|&m| m as i64 == factor) && walked == formula,
        "explicit walk disagrees with lcm(d, N)/N"
    );
    Ok(walked)
}

/// Conjugacy type of an isometry of a signature `(1, 2)` lattice, acting on
/// the hyperbolic plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryClass {
    /// Finite order.
    Elliptic,
    /// Infinite order, all eigenvalues of modulus 1: one fixed point on the
    /// ideal boundary.
    Parabolic,
    /// An eigenvalue of modulus greater than 1.
    Hyperbolic,
}

/// Elements of finite order in `GL_3(Z)` have order 1, 2, 3, 4 or 6.
const FINITE_ORDER_BOUND: i64 = 12;

pub fn classify_isometry(
    lattice: &IntegralLattice,
    f: &Isometry,
) -> Result<IsometryClass, WallError> {
    let (positive, negative, degenerate) = lattice.signature();
    if (positive, negative, degenerate) != (1, 2, 0) {
        return Err(WallError::WrongSignature {
            positive,
            negative,
            degenerate,
        });
    }
    if !f.preserves(lattice) {
        return Err(LatticeError::NotIsometry.into());
    }
    for n in 1..=FINITE_ORDER_BOUND {
        if f.power(n)?.is_identity() {
            return Ok(IsometryClass::Elliptic);
        }
    }
    let m = f.matrix();
    let (a, b, c, d, e, g, h, i, j) = (
        m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
    );
    // x³ − t x² + k x − det
    let trace = a + e + j;
    let minors = (a * e - b * d) + (a * j - c * h) + (e * j - g * i);
    let det = i64::try_from(f.determinant()).map_err(|_| LatticeError::Overflow)?;
    let charpoly = |x: i64| x * x * x - trace * x * x + minors * x - det;
    let r = [1i64, -1]
        .into_iter()
        .find(|&r| charpoly(r) == 0)
        .ok_or_else(|| WallError::Internal("characteristic polynomial has no root ±1".into()))?;
    // Remaining factor x² − t' x + d' with t' = trace − r, d' = det / r.
    let t2 = trace - r;
    let d2 = det / r;
    let hyperbolic = match d2 {
        1 => t2 * t2 - 4 > 0,
        -1 => t2 != 0,
        _ => {
            return Err(WallError::Internal(format!(
                "unexpected eigenvalue product {d2}"
            )))
        }
    };
    if hyperbolic {
        return Ok(IsometryClass::Hyperbolic);
    }
    // All eigenvalues are roots of unity; infinite order forces a nontrivial
    // unipotent part, visible as (f − r)² ≠ 0.
    let shifted = f.matrix().iter().enumerate().map(|(row, v)| {
        v.iter()
            .enumerate()
            .map(|(col, &x)| BigRational::from_integer((x - if row == col { r } else { 0 }).into()))
            .collect()
    });
    let shifted: Vec<Vec<BigRational>> = shifted.collect();
    let sq = mat_sq(&shifted);
    if linalg::rank(&sq) == 0 && !f.power(2)?.is_identity() {
        return Err(WallError::Internal(
            "infinite order isometry without a unipotent part".into(),
        ));
    }
    Ok(IsometryClass::Parabolic)
}

fn mat_sq(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &m[i][k] * &m[k][j]))
                .collect()
        })
        .collect()
}

/// Square roots of the diagonal form `diag(a, −b, −c)`, used to put a period
/// point on the hyperboloid `x² − y² − z² = 1`.
fn hyperboloid_scales(lattice: &IntegralLattice) -> Result<[f64; 3], WallError> {
    let g = lattice.gram();
    let diagonal = lattice.rank() == 3 && (0..3).all(|i| (0..3).all(|j| i == j || g[i][j] == 0));
    if !diagonal || g[0][0] <= 0 || g[1][1] >= 0 || g[2][2] >= 0 {
        return Err(WallError::Parameter(
            "disc projection needs a diagonal form diag(a, -b, -c) with a, b, c > 0".into(),
        ));
    }
    Ok([
        (g[0][0] as f64).sqrt(),
        (-g[1][1] as f64).sqrt(),
        (-g[2][2] as f64).sqrt(),
    ])
}

/// Poincaré disc coordinates of a period point: normalize to the hyperboloid
/// and map `(x, y, z) ↦ (y, z)/(1 + x)`.
pub fn disc_project(
    lattice: &IntegralLattice,
    omega: &PeriodPoint,
) -> Result<(f64, f64), WallError> {
    check_cone(lattice, &omega.coords)?;
    let s = hyperboloid_scales(lattice)?;
    let c: Vec<f64> = omega.coords.iter().map(rational::to_f64).collect();
    let (x, y, z) = (c[0] * s[0], c[1] * s[1], c[2] * s[2]);
    let norm = (x * x - y * y - z * z).sqrt();
    let (x, y, z) = (x / norm, y / norm, z / norm);
    Ok((y / (1.0 + x), z / (1.0 + x)))
}

/// Klein-model point (the slice `x = 1` of the cone) to Poincaré disc.
pub fn klein_to_disc(k: (f64, f64)) -> (f64, f64) {
    let r2 = k.0 * k.0 + k.1 * k.1;
    let denom = 1.0 + (1.0 - r2).max(0.0).sqrt();
    (k.0 / denom, k.1 / denom)
}

/// Ideal endpoints of the wall geodesic on the unit circle, or `None` when the
/// wall misses the hyperbolic plane.
pub fn wall_endpoints(
    lattice: &IntegralLattice,
    wall: &WallClass,
) -> Result<Option<[(f64, f64); 2]>, WallError> {
    let s = hyperboloid_scales(lattice)?;
    let g = lattice.gram();
    let w: Vec<f64> = wall.vector().iter().map(rational::to_f64).collect();
    // Pairing in normalized coordinates X = s0 x, …:
    // (g00 w0 / s0) X + (g11 w1 / s1) Y + (g22 w2 / s2) Z = 0, sliced at X = 1.
    let k0 = g[0][0] as f64 * w[0] / s[0];
    let ky = g[1][1] as f64 * w[1] / s[1];
    let kz = g[2][2] as f64 * w[2] / s[2];
    // ky Y + kz Z = −k0
    let norm2 = ky * ky + kz * kz;
    if norm2 == 0.0 {
        return Ok(None);
    }
    let gamma = -k0;
    let dist2 = gamma * gamma / norm2;
    if dist2 >= 1.0 {
        return Ok(None);
    }
    let foot = (gamma * ky / norm2, gamma * kz / norm2);
    let half = (1.0 - dist2).sqrt();
    let dir = (-kz / norm2.sqrt(), ky / norm2.sqrt());
    let a = (foot.0 + half * dir.0, foot.1 + half * dir.1);
    let b = (foot.0 - half * dir.0, foot.1 - half * dir.1);
    let mut ends = [a, b];
    ends.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    Ok(Some(ends))
}

/// Points along the wall geodesic in the disc model, from one ideal endpoint
/// to the other.
pub fn wall_geodesic(
    lattice: &IntegralLattice,
    wall: &WallClass,
    samples: usize,
) -> Result<Vec<(f64, f64)>, WallError> {
    let Some([a, b]) = wall_endpoints(lattice, wall)? else {
        return Ok(Vec::new());
    };
    let samples = samples.max(2);
    Ok((0..samples)
        .map(|i| {
            let t = i as f64 / (samples - 1) as f64;
            klein_to_disc((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)))
        })
        .collect())
}

/// The orbit points `(f*)^n ω₀` for `n` in `range`, as period points.
pub fn orbit_points(
    lattice: &IntegralLattice,
    f: &Isometry,
    omega0: &PeriodPoint,
    range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<(i64, PeriodPoint)>, WallError> {
    let forward = f.adjoint(lattice)?;
    let mut out = Vec::new();
    for n in range {
        let step = forward.power(n)?;
        let coords = step.apply_q(&omega0.coords)?;
        out.push((n, PeriodPoint::new(lattice, coords)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;
    use crate::rational::ratio;

    fn wall() -> WallClass {
        WallClass::unperturbed(standard::canonical_class()).unwrap()
    }

    #[test]
    fn cone_checks() {
        let l = standard::lattice();
        assert!(PeriodPoint::from_integers(&l, &[1, 1, 0]).is_err());
        assert!(PeriodPoint::from_integers(&l, &[-2, 1, 0]).is_err());
        assert!(PeriodPoint::from_integers(&l, &[2, 1, 0]).is_ok());
    }

    #[test]
    fn wall_values() {
        let l = standard::lattice();
        let w = wall();
        let a = PeriodPoint::from_integers(&l, &[2, 1, 0]).unwrap();
        let b = PeriodPoint::from_integers(&l, &[3, 2, 2]).unwrap();
        assert_eq!(wall_evaluate(&l, &w, &a).unwrap(), ratio(1, 1));
        assert_eq!(wall_evaluate(&l, &w, &b).unwrap(), ratio(-1, 1));
        assert_eq!(segment_crossing(&l, &b, &a, &w).unwrap(), 1);
        assert_eq!(segment_crossing(&l, &a, &b, &w).unwrap(), -1);
        assert_eq!(segment_crossing(&l, &a, &a, &w).unwrap(), 0);
    }

    #[test]
    fn segment_endpoint_on_wall() {
        let l = standard::lattice();
        let on = PeriodPoint::from_integers(&l, &[2, 1, 1]).unwrap();
        let off = PeriodPoint::from_integers(&l, &[2, 1, 0]).unwrap();
        assert_eq!(
            segment_crossing(&l, &on, &off, &wall()),
            Err(WallError::NonGenericEndpoint)
        );
    }

    #[test]
    fn zero_wall_rejected() {
        let c1 = LatticeVector::new([1, 0, 0]);
        assert_eq!(
            WallClass::new(c1, vec![ratio(-1, 1), ratio(0, 1), ratio(0, 1)]),
            Err(WallError::ZeroWall)
        );
    }

    #[test]
    fn spinc_requires_zero_dimensional_x() {
        let l = standard::lattice();
        assert!(SpinCData::new(&l, standard::canonical_class(), 1, 2).is_err());
        assert!(SpinCData::new(&l, LatticeVector::new([1, 0, 0]), 1, 0).is_err());
        assert!(SpinCData::new(&l, standard::canonical_class(), 1, 0).is_ok());
    }

    #[test]
    fn window_must_fit() {
        let l = standard::lattice();
        let sp = SpinCData::new(&l, standard::canonical_class(), 1, 0).unwrap();
        let om = PeriodPoint::from_integers(&l, &[3, 1, 0]).unwrap();
        let cfg = OrbitConfig {
            n_max: 4,
            window: 8,
        };
        assert!(matches!(
            orbit_swtot(
                &l,
                &standard::composed_reflection(),
                &wall(),
                &sp,
                &om,
                &cfg
            ),
            Err(WallError::Parameter(_))
        ));
    }

    #[test]
    fn negative_alpha_rejected() {
        let l = standard::lattice();
        let sp = SpinCData::new(&l, standard::canonical_class(), 1, 0).unwrap();
        let om = PeriodPoint::from_integers(&l, &[3, 1, 0]).unwrap();
        assert_eq!(
            orbit_swtot(
                &l,
                &Isometry::negation(3),
                &wall(),
                &sp,
                &om,
                &OrbitConfig::default()
            ),
            Err(WallError::AlphaNegative)
        );
    }

    #[test]
    fn finite_orbit_examples() {
        assert_eq!(finite_orbit_swtot(3, &[1, 2, 3], 1).unwrap(), 6);
        assert_eq!(finite_orbit_swtot(1, &[5], 7).unwrap(), 35);
        assert_eq!(finite_orbit_swtot(4, &[1, 0, -2, 3], 6).unwrap(), 6);
        assert!(finite_orbit_swtot(2, &[1], 1).is_err());
    }

    #[test]
    fn klein_center() {
        assert_eq!(klein_to_disc((0.0, 0.0)), (0.0, 0.0));
    }
}
