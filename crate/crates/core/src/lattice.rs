//! Integral lattices, their isometries, and isometric structures.
//!
//! Matrices act on column coordinate vectors: column `j` of an isometry is the
//! image of the `j`-th basis vector. For `H_2(CP² # 2 CP²-bar)` the basis is
//! `(S, E_1, E_2)` with intersection form `diag(1, −1, −1)`; see [`standard`].

#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix must be a nonempty square symmetric integer matrix")]
    InvalidGram,
    #[error("designated positive class has square {square}, expected > 0")]
    NonPositiveClass { square: i64 },
    #[error("no positive class designated on this lattice")]
    NoPositiveClass,
    #[error("matrix does not preserve the intersection form")]
    NotIsometry,
    #[error("matrix has determinant {det}, expected ±1")]
    NotUnimodular { det: String },
    #[error("reflection class has square {square}, expected -1")]
    NotASphere { square: i64 },
    #[error(
        "image of the positive class is orthogonal to it; the form is not of signature (1, k)"
    )]
    IsotropicImage,
    #[error("c1^2 = {c1_square} is not congruent to 2*euler + 3*signature = {expected} mod 4")]
    Integrality { c1_square: i64, expected: i64 },
    #[error("integer overflow while composing isometries")]
    Overflow,
    #[error("metabolizer search exceeded its budget of {budget} candidate trials")]
    Budget { budget: u64 },
    #[error("{0}")]
    Parameter(String),
}

/// Integer coordinates with respect to the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        LatticeVector(coords.into())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    /// gcd of the coordinates is 1.
    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
    }

    pub fn concat(&self, other: &LatticeVector) -> LatticeVector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        LatticeVector(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A free abelian group with an integral symmetric bilinear form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralLattice {
    gram: Vec<Vec<i64>>,
    positive_class: Option<LatticeVector>,
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::InvalidGram);
        }
        if (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
            return Err(LatticeError::InvalidGram);
        }
        Ok(IntegralLattice {
            gram,
            positive_class: None,
        })
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self, LatticeError> {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { entries[i] } else { 0 })
                    .collect()
            })
            .collect();
        Self::new(gram)
    }

    /// Designates the class spanning the positive part (for `b_+ = 1` forms).
    pub fn with_positive_class(mut self, v: LatticeVector) -> Result<Self, LatticeError> {
        self.check_dim(&v)?;
        let square = self.square(&v)?;
        if square <= 0 {
            return Err(LatticeError::NonPositiveClass { square });
        }
        self.positive_class = Some(v);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn positive_class(&self) -> Option<&LatticeVector> {
        self.positive_class.as_ref()
    }

    pub(crate) fn check_dim(&self, v: &LatticeVector) -> Result<(), LatticeError> {
        check_len(self.rank(), v.rank())
    }

    pub fn pairing(&self, u: &LatticeVector, v: &LatticeVector) -> Result<i64, LatticeError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let mut acc: i128 = 0;
        for (i, &ui) in u.0.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.0.iter().enumerate() {
                acc += ui as i128 * self.gram[i][j] as i128 * vj as i128;
            }
        }
        i64::try_from(acc).map_err(|_| LatticeError::Overflow)
    }

    pub fn square(&self, v: &LatticeVector) -> Result<i64, LatticeError> {
        self.pairing(v, v)
    }

    /// The pairing extended to rational vectors.
    pub fn pairing_q(
        &self,
        u: &[BigRational],
        v: &[BigRational],
    ) -> Result<BigRational, LatticeError> {
        check_len(self.rank(), u.len())?;
        check_len(self.rank(), v.len())?;
        let mut acc = BigRational::zero();
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate() {
                if self.gram[i][j] != 0 {
                    acc += ui * vj * BigRational::from_integer(self.gram[i][j].into());
                }
            }
        }
        Ok(acc)
    }

    /// `(positive, negative, degenerate)` dimensions.
    pub fn signature(&self) -> (usize, usize, usize) {
        linalg::signature(&linalg::to_q(&self.gram))
    }

    pub(crate) fn gram_q(&self) -> Vec<Vec<BigRational>> {
        linalg::to_q(&self.gram)
    }

    /// `L ⊕ −L`, with no positive class.
    pub fn doubled(&self) -> IntegralLattice {
        let n = self.rank();
        let mut gram = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j];
                gram[n + i][n + j] = -self.gram[i][j];
            }
        }
        IntegralLattice {
            gram,
            positive_class: None,
        }
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), LatticeError> {
    if expected == found {
        Ok(())
    } else {
        Err(LatticeError::DimensionMismatch { expected, found })
    }
}

/// `uᵀ · gram · v`.
pub fn pairing(
    lattice: &IntegralLattice,
    u: &LatticeVector,
    v: &LatticeVector,
) -> Result<i64, LatticeError> {
    lattice.pairing(u, v)
}

/// An integer matrix preserving a lattice's form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Isometry {
    matrix: Vec<Vec<i64>>,
}

impl Isometry {
    /// Validates `Mᵀ G M = G` and `det M = ±1`.
    pub fn new(lattice: &IntegralLattice, matrix: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = lattice.rank();
        check_len(n, matrix.len())?;
        for row in &matrix {
            check_len(n, row.len())?;
        }
        let f = Isometry { matrix };
        if !f.preserves(lattice) {
            return Err(LatticeError::NotIsometry);
        }
        let det = f.determinant();
        if det.abs() != BigInt::from(1) {
            return Err(LatticeError::NotUnimodular {
                det: det.to_string(),
            });
        }
        Ok(f)
    }

    pub fn identity(rank: usize) -> Self {
        Isometry {
            matrix: (0..rank)
                .map(|i| (0..rank).map(|j| (i == j) as i64).collect())
                .collect(),
        }
    }

    /// `x ↦ −x`.
    pub fn negation(rank: usize) -> Self {
        let mut f = Self::identity(rank);
        for i in 0..rank {
            f.matrix[i][i] = -1;
        }
        f
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// Whether `Mᵀ G M = G` holds exactly.
    pub fn preserves(&self, lattice: &IntegralLattice) -> bool {
        let n = lattice.rank();
        if self.rank() != n {
            return false;
        }
        let g = lattice.gram();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let mut acc: i128 = 0;
                for i in 0..n {
                    for j in 0..n {
                        acc +=
                            self.matrix[i][a] as i128 * g[i][j] as i128 * self.matrix[j][b] as i128;
                    }
                }
                acc == g[a][b] as i128
            })
        })
    }

    pub fn determinant(&self) -> BigInt {
        let d = linalg::determinant(&linalg::to_q(&self.matrix));
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector, LatticeError> {
        check_len(self.rank(), v.rank())?;
        let out = self
            .matrix
            .iter()
            .map(|row| {
                let acc: i128 = row
                    .iter()
                    .zip(&v.0)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                i64::try_from(acc).map_err(|_| LatticeError::Overflow)
            })
            .collect::<Result<_, _>>()?;
        Ok(LatticeVector(out))
    }

    pub fn apply_q(&self, v: &[BigRational]) -> Result<Vec<BigRational>, LatticeError> {
        check_len(self.rank(), v.len())?;
        Ok(self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(&a, _)| a != 0)
                    .fold(BigRational::zero(), |acc, (&a, x)| {
                        acc + x * BigRational::from_integer(a.into())
                    })
            })
            .collect())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry, LatticeError> {
        check_len(self.rank(), other.rank())?;
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    let t = self.matrix[i][k]
                        .checked_mul(other.matrix[k][j])
                        .ok_or(LatticeError::Overflow)?;
                    acc = acc.checked_add(t).ok_or(LatticeError::Overflow)?;
                }
                m[i][j] = acc;
            }
        }
        Ok(Isometry { matrix: m })
    }

    /// Exact inverse; integral because the determinant is ±1.
    pub fn inverse(&self) -> Isometry {
        let inv = linalg::inverse(&linalg::to_q(&self.matrix)).expect("isometries are invertible");
        Isometry {
            matrix: to_integer_matrix(&inv).expect("unimodular inverse is integral"),
        }
    }

    /// The form-adjoint `G⁻¹ Mᵀ G`. For an isometry of a nondegenerate form
    /// this is the inverse; it is the action used on cohomology classes.
    pub fn adjoint(&self, lattice: &IntegralLattice) -> Result<Isometry, LatticeError> {
        check_len(lattice.rank(), self.rank())?;
        let g = lattice.gram_q();
        let ginv = linalg::inverse(&g).ok_or(LatticeError::InvalidGram)?;
        let n = self.rank();
        let mt: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(self.matrix[j][i].into()))
                    .collect()
            })
            .collect();
        let prod = mat_mul_q(&mat_mul_q(&ginv, &mt), &g);
        let matrix = to_integer_matrix(&prod).ok_or(LatticeError::NotIsometry)?;
        Ok(Isometry { matrix })
    }

    /// `self^e`; negative exponents use the inverse.
    pub fn power(&self, e: i64) -> Result<Isometry, LatticeError> {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Isometry::identity(self.rank());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Isometry) -> Isometry {
        let (a, b) = (self.rank(), other.rank());
        let mut m = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            m[i][..a].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..b {
            m[a + i][a..].copy_from_slice(&other.matrix[i]);
        }
        Isometry { matrix: m }
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", LatticeVector(row.clone()))?;
        }
        Ok(())
    }
}

fn mat_mul_q(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

fn to_integer_matrix(m: &[Vec<BigRational>]) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// `x ↦ x + 2(x·Σ)Σ` for a class `Σ` of square −1.
pub fn reflection_sphere(
    lattice: &IntegralLattice,
    sigma: &LatticeVector,
) -> Result<Isometry, LatticeError> {
    let square = lattice.square(sigma)?;
    if square != -1 {
        return Err(LatticeError::NotASphere { square });
    }
    let n = lattice.rank();
    let mut matrix = vec![vec![0i64; n]; n];
    for j in 0..n {
        let e = LatticeVector::basis(n, j);
        let c = 2 * lattice.pairing(&e, sigma)?;
        for i in 0..n {
            matrix[i][j] = e.0[i] + c * sigma.0[i];
        }
    }
    Isometry::new(lattice, matrix)
}

/// `a ∘ b`.
pub fn compose(a: &Isometry, b: &Isometry) -> Result<Isometry, LatticeError> {
    a.compose(b)
}

/// `+1` if `f` preserves the component of the positive cone containing the
/// designated positive class, `−1` if it swaps the two components.
pub fn alpha_invariant(lattice: &IntegralLattice, f: &Isometry) -> Result<i8, LatticeError> {
    let v = lattice
        .positive_class()
        .ok_or(LatticeError::NoPositiveClass)?;
    let fv = f.apply(v)?;
    match lattice.pairing(&fv, v)?.signum() {
        1 => Ok(1),
        -1 => Ok(-1),
        _ => Err(LatticeError::IsotropicImage),
    }
}

/// The isometric structure `(L ⊕ L, f ⊕ id, q ⊕ −q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometricStructure {
    lattice: IntegralLattice,
    map: Isometry,
}

impl IsometricStructure {
    pub fn new(base: &IntegralLattice, f: &Isometry) -> Result<Self, LatticeError> {
        if !f.preserves(base) {
            return Err(LatticeError::NotIsometry);
        }
        let lattice = base.doubled();
        let map = f.direct_sum(&Isometry::identity(base.rank()));
        debug_assert!(map.preserves(&lattice));
        Ok(IsometricStructure { lattice, map })
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn map(&self) -> &Isometry {
        &self.map
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

/// Detailed outcome of [`metabolizer_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetabolizerReport {
    /// Dimension of the rational span.
    pub dimension: usize,
    pub half_rank: usize,
    /// The doubled form vanishes on the span.
    pub isotropic: bool,
    /// The span is carried into itself by `f ⊕ id`.
    pub invariant: bool,
    /// The vectors are independent and their integer span is saturated.
    /// Reported only; not part of the criterion.
    pub primitive: bool,
    pub is_metabolizer: bool,
}

pub fn metabolizer_report(
    s: &IsometricStructure,
    vectors: &[LatticeVector],
) -> Result<MetabolizerReport, LatticeError> {
    for v in vectors {
        s.lattice.check_dim(v)?;
    }
    let rows: Vec<Vec<BigRational>> = vectors.iter().map(LatticeVector::to_rational).collect();
    let dimension = if rows.is_empty() {
        0
    } else {
        linalg::rank(&rows)
    };
    let half_rank = s.rank() / 2;
    let mut isotropic = true;
    for u in vectors {
        for v in vectors {
            if s.lattice.pairing(u, v)? != 0 {
                isotropic = false;
            }
        }
    }
    let mut invariant = true;
    for v in vectors {
        let mut ext = rows.clone();
        ext.push(s.map.apply(v)?.to_rational());
        if linalg::rank(&ext) != dimension {
            invariant = false;
        }
    }
    let primitive = dimension == vectors.len() && dimension > 0 && saturated(vectors);
    let is_metabolizer = s.rank() % 2 == 0 && dimension == half_rank && isotropic && invariant;
    Ok(MetabolizerReport {
        dimension,
        half_rank,
        isotropic,
        invariant,
        primitive,
        is_metabolizer,
    })
}

/// Whether `vectors` span a half-rank, `f ⊕ id`-invariant subspace on which
/// `q ⊕ −q` vanishes, all over `Q`.
pub fn metabolizer_check(
    s: &IsometricStructure,
    vectors: &[LatticeVector],
) -> Result<bool, LatticeError> {
    Ok(metabolizer_report(s, vectors)?.is_metabolizer)
}

/// gcd of the maximal minors is 1.
fn saturated(vectors: &[LatticeVector]) -> bool {
    let k = vectors.len();
    let n = vectors[0].rank();
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let minor: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| cols.iter().map(|&c| v.0[c]).collect())
            .collect();
        let d = linalg::determinant(&linalg::to_q(&minor)).to_integer();
        g = g.gcd(&d);
        if g.is_one() {
            return true;
        }
        // Next k-subset of 0..n in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| cols[i] != i + n - k) else {
            return false;
        };
        cols[i] += 1;
        for j in i + 1..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// Bounded exhaustive search for a metabolizer.
///
/// Candidates are the primitive isotropic vectors with coordinates in
/// `[-bound, bound]` whose first nonzero coordinate is positive, in
/// lexicographic order. A depth-first search adds candidates one at a time,
/// closing the span under `f ⊕ id` after each addition and backtracking when
/// the closure stops being isotropic or exceeds half the rank. Each candidate
/// trial counts against `budget`.
pub fn metabolizer_search(
    s: &IsometricStructure,
    bound: i64,
    budget: u64,
) -> Result<Option<Vec<LatticeVector>>, LatticeError> {
    if bound < 1 {
        return Err(LatticeError::Parameter(format!(
            "coefficient bound must be >= 1, got {bound}"
        )));
    }
    if s.rank() % 2 != 0 {
        return Err(LatticeError::Parameter(
            "isometric structure has odd rank".into(),
        ));
    }
    let candidates = isotropic_candidates(s, bound)?;
    let mut search = Search {
        s,
        candidates: &candidates,
        budget,
        trials: 0,
    };
    search.extend(&[], 0)
}

fn isotropic_candidates(
    s: &IsometricStructure,
    bound: i64,
) -> Result<Vec<LatticeVector>, LatticeError> {
    let n = s.rank();
    let mut out = Vec::new();
    let mut cur = vec![-bound; n];
    loop {
        let v = LatticeVector(cur.clone());
        let leading_positive = v.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if leading_positive && v.is_primitive() && s.lattice.square(&v)? == 0 {
            out.push(v);
        }
        // Odometer, last coordinate fastest.
        let Some(i) = (0..n).rev().find(|&i| cur[i] < bound) else {
            return Ok(out);
        };
        cur[i] += 1;
        for x in cur.iter_mut().skip(i + 1) {
            *x = -bound;
        }
    }
}

struct Search<'a> {
    s: &'a IsometricStructure,
    candidates: &'a [LatticeVector],
    budget: u64,
    trials: u64,
}

impl Search<'_> {
    fn extend(
        &mut self,
        basis: &[LatticeVector],
        start: usize,
    ) -> Result<Option<Vec<LatticeVector>>, LatticeError> {
        let half = self.s.rank() / 2;
        if basis.len() == half {
            return Ok(metabolizer_check(self.s, basis)?.then(|| basis.to_vec()));
        }
        for (idx, c) in self.candidates.iter().enumerate().skip(start) {
            self.trials += 1;
            if self.trials > self.budget {
                return Err(LatticeError::Budget {
                    budget: self.budget,
                });
            }
            let Some(closed) = self.invariant_closure(basis, c)? else {
                continue;
            };
            if let Some(found) = self.extend(&closed, idx + 1)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    /// Smallest `f ⊕ id`-invariant extension of `basis` containing `c`, if it
    /// is isotropic and at most half-rank.
    fn invariant_closure(
        &self,
        basis: &[LatticeVector],
        c: &LatticeVector,
    ) -> Result<Option<Vec<LatticeVector>>, LatticeError> {
        let half = self.s.rank() / 2;
        let mut out = basis.to_vec();
        let mut rows: Vec<Vec<BigRational>> = out.iter().map(LatticeVector::to_rational).collect();
        let mut queue = vec![c.clone()];
        while let Some(v) = queue.pop() {
            let mut ext = rows.clone();
            ext.push(v.to_rational());
            if linalg::rank(&ext) == rows.len() {
                continue;
            }
            if out.len() == half {
                return Ok(None);
            }
            if self.s.lattice.square(&v)? != 0 {
                return Ok(None);
            }
            for b in &out {
                if self.s.lattice.pairing(&v, b)? != 0 {
                    return Ok(None);
                }
            }
            let image = match self.s.map.apply(&v) {
                Ok(w) => w,
                Err(LatticeError::Overflow) => return Ok(None),
                Err(e) => return Err(e),
            };
            out.push(v);
            rows = ext;
            queue.push(image);
        }
        Ok(Some(out))
    }
}

/// Expected dimension `(c₁² − 2χ − 3σ)/4` of a Seiberg–Witten moduli space.
pub fn sw_formal_dimension(
    c1_square: i64,
    euler: i64,
    signature: i64,
) -> Result<i64, LatticeError> {
    let expected = 2 * euler + 3 * signature;
    if (c1_square - expected).rem_euclid(4) != 0 {
        return Err(LatticeError::Integrality {
            c1_square,
            expected,
        });
    }
    Ok((c1_square - expected) / 4)
}

/// `H_2(CP² # 2 CP²-bar)` in the basis `(S, E_1, E_2)` and its distinguished
/// classes.
pub mod standard {
    use super::*;

    /// `diag(1, −1, −1)` with positive class `S`.
    pub fn lattice() -> IntegralLattice {
        IntegralLattice::diagonal(&[1, -1, -1])
            .and_then(|l| l.with_positive_class(LatticeVector::new([1, 0, 0])))
            .expect("standard lattice is valid")
    }

    /// `Σ₊ = S + E_1 + E_2`.
    pub fn sigma_plus() -> LatticeVector {
        LatticeVector::new([1, 1, 1])
    }

    /// `Σ₋ = S − E_1 + E_2`.
    pub fn sigma_minus() -> LatticeVector {
        LatticeVector::new([1, -1, 1])
    }

    /// `c₁ = s + e_1 + e_2`.
    pub fn canonical_class() -> LatticeVector {
        LatticeVector::new([1, 1, 1])
    }

    /// `ρ^{Σ₊} ∘ ρ^{Σ₋}`.
    pub fn composed_reflection() -> Isometry {
        let l = lattice();
        let plus = reflection_sphere(&l, &sigma_plus()).expect("Σ₊ has square −1");
        let minus = reflection_sphere(&l, &sigma_minus()).expect("Σ₋ has square −1");
        plus.compose(&minus).expect("same rank")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_validation() {
        assert!(IntegralLattice::new(vec![vec![1, 2], vec![3, 1]]).is_err());
        assert!(IntegralLattice::new(vec![]).is_err());
        assert!(IntegralLattice::diagonal(&[1, -1])
            .unwrap()
            .with_positive_class(LatticeVector::new([0, 1]))
            .is_err());
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let l = standard::lattice();
        assert!(matches!(
            l.pairing(&LatticeVector::new([1, 0]), &LatticeVector::new([1, 0, 0])),
            Err(LatticeError::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn reflection_requires_minus_one_sphere() {
        let l = standard::lattice();
        assert!(matches!(
            reflection_sphere(&l, &LatticeVector::new([1, 0, 0])),
            Err(LatticeError::NotASphere { square: 1 })
        ));
    }

    #[test]
    fn isometry_validation() {
        let l = standard::lattice();
        assert!(matches!(
            Isometry::new(&l, vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            Err(LatticeError::NotIsometry)
        ));
        assert!(Isometry::new(&l, vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]).is_ok());
    }

    #[test]
    fn adjoint_is_inverse_for_isometries() {
        let l = standard::lattice();
        let f = standard::composed_reflection();
        assert_eq!(f.adjoint(&l).unwrap(), f.inverse());
        assert!(f.compose(&f.inverse()).unwrap().is_identity());
    }

    #[test]
    fn alpha_needs_positive_class() {
        let l = IntegralLattice::diagonal(&[1, -1, -1]).unwrap();
        assert!(matches!(
            alpha_invariant(&l, &Isometry::identity(3)),
            Err(LatticeError::NoPositiveClass)
        ));
    }

    #[test]
    fn dimension_integrality() {
        assert_eq!(sw_formal_dimension(-1, 5, -1), Ok(-2));
        assert!(matches!(
            sw_formal_dimension(0, 5, -1),
            Err(LatticeError::Integrality { .. })
        ));
    }

    #[test]
    fn search_rejects_bad_bound() {
        let s = IsometricStructure::new(&standard::lattice(), &Isometry::identity(3)).unwrap();
        assert!(metabolizer_search(&s, 0, 10).is_err());
    }

    #[test]
    fn search_budget() {
        let s = IsometricStructure::new(&standard::lattice(), &standard::composed_reflection())
            .unwrap();
        assert!(matches!(
            metabolizer_search(&s, 1, 1),
            Err(LatticeError::Budget { budget: 1 })
        ));
    }

    #[test]
    fn primitivity_report() {
        let l = IntegralLattice::diagonal(&[1]).unwrap();
        let s = IsometricStructure::new(&l, &Isometry::identity(1)).unwrap();
        let r = metabolizer_report(&s, &[LatticeVector::new([2, 2])]).unwrap();
        assert!(r.is_metabolizer);
        assert!(!r.primitive);
        let r = metabolizer_report(&s, &[LatticeVector::new([1, 1])]).unwrap();
        assert!(r.primitive);
    }
}
