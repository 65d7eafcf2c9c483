//! Numerical data of U(p,q)-Hitchin pairs and quiver bundles, and the slope
//! computations on them.
//!
//! Nothing here sees an actual bundle: a pair `(V, W, β, γ)` enters only
//! through its type `(p, q, a, b)` of ranks and degrees, and a quiver bundle
//! through its per-vertex `(rank, degree)` list.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Ranks and degrees `(p, q, a, b)` of a U(p,q)-Hitchin pair, with
/// `p = rk V`, `q = rk W`, `a = deg V`, `b = deg W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPairType")]
pub struct HitchinPairType {
    p: u32,
    q: u32,
    a: i64,
    b: i64,
}

#[derive(Deserialize)]
struct RawPairType {
    p: u32,
    q: u32,
    a: i64,
    b: i64,
}

impl TryFrom<RawPairType> for HitchinPairType {
    type Error = Error;

    fn try_from(raw: RawPairType) -> Result<Self> {
        HitchinPairType::new(raw.p, raw.q, raw.a, raw.b)
    }
}

impl HitchinPairType {
    pub fn new(p: u32, q: u32, a: i64, b: i64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidType(format!(
                "ranks must be positive, got p = {p}, q = {q}"
            )));
        }
        Ok(Self { p, q, a, b })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn total_rank(&self) -> u32 {
        self.p + self.q
    }

    pub fn total_degree(&self) -> i64 {
        self.a + self.b
    }

    pub fn min_rank(&self) -> u32 {
        self.p.min(self.q)
    }

    /// The type with the roles of `V` and `W` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
            a: self.b,
            b: self.a,
        }
    }

    /// Numerical type of the pair viewed as a bundle over the two-vertex
    /// quiver with one arrow in each direction. Vertex 0 carries `V`, vertex
    /// 1 carries `W`.
    pub fn doubled_quiver_type(&self) -> QuiverNumericalType {
        QuiverNumericalType {
            vertices: vec![
                VertexData {
                    rank: self.p,
                    degree: self.a,
                },
                VertexData {
                    rank: self.q,
                    degree: self.b,
                },
            ],
        }
    }
}

/// Genus of the curve and degree of the twisting line bundle `L`.
///
/// `genus` may be left unset for a bare twist degree; a canonical context
/// always has it, with `twist_degree = 2g - 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawContext")]
pub struct GeometryContext {
    genus: Option<u32>,
    twist_degree: i64,
    canonical: bool,
}

#[derive(Deserialize)]
struct RawContext {
    genus: Option<u32>,
    twist_degree: i64,
    canonical: bool,
}

impl TryFrom<RawContext> for GeometryContext {
    type Error = Error;

    fn try_from(raw: RawContext) -> Result<Self> {
        let ctx = GeometryContext {
            genus: raw.genus,
            twist_degree: raw.twist_degree,
            canonical: raw.canonical,
        };
        ctx.validate()?;
        Ok(ctx)
    }
}

impl GeometryContext {
    /// `L = K`, so `deg L = 2g - 2`.
    pub fn canonical(genus: u32) -> Self {
        Self {
            genus: Some(genus),
            twist_degree: 2 * i64::from(genus) - 2,
            canonical: true,
        }
    }

    pub fn twisted(genus: Option<u32>, twist_degree: i64) -> Self {
        Self {
            genus,
            twist_degree,
            canonical: false,
        }
    }

    pub fn genus(&self) -> Option<u32> {
        self.genus
    }

    pub fn twist_degree(&self) -> i64 {
        self.twist_degree
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    fn validate(&self) -> Result<()> {
        if self.canonical {
            match self.genus {
                Some(g) if self.twist_degree == 2 * i64::from(g) - 2 => Ok(()),
                Some(g) => Err(Error::InvalidContext(format!(
                    "canonical twist needs deg(L) = {} for genus {g}, got {}",
                    2 * i64::from(g) - 2,
                    self.twist_degree
                ))),
                None => Err(Error::InvalidContext(
                    "canonical twist needs a genus".to_string(),
                )),
            }
        } else {
            Ok(())
        }
    }
}

/// Ranks of the Higgs fields `β: W → V ⊗ L` and `γ: V → W ⊗ L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiggsRankPair {
    pub rk_beta: u32,
    pub rk_gamma: u32,
}

impl HiggsRankPair {
    pub fn new(rk_beta: u32, rk_gamma: u32) -> Self {
        Self { rk_beta, rk_gamma }
    }

    pub fn validate_for(&self, t: &HitchinPairType) -> Result<()> {
        let max = t.min_rank();
        if self.rk_beta > max {
            return Err(Error::RankOutOfRange {
                field: "rk_beta",
                rank: self.rk_beta,
                max,
            });
        }
        if self.rk_gamma > max {
            return Err(Error::RankOutOfRange {
                field: "rk_gamma",
                rank: self.rk_gamma,
                max,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver with vertices `0..vertex_count`. Oriented cycles, loops
/// and parallel arrows are all allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidType("quiver needs a vertex".to_string()));
        }
        if let Some(bad) = arrows
            .iter()
            .find(|a| a.tail >= vertex_count || a.head >= vertex_count)
        {
            return Err(Error::InvalidType(format!(
                "arrow {} -> {} leaves the vertex range 0..{vertex_count}",
                bad.tail, bad.head
            )));
        }
        Ok(Self {
            vertex_count,
            arrows,
        })
    }

    /// Two vertices (`V` = 0, `W` = 1) with `γ: 0 → 1` and `β: 1 → 0`.
    pub fn upq() -> Self {
        Self {
            vertex_count: 2,
            arrows: vec![Arrow { tail: 0, head: 1 }, Arrow { tail: 1, head: 0 }],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
}

/// Degree of the twisting bundle on each arrow. Carried as metadata only;
/// no slope depends on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistAssignment {
    degrees: Vec<i64>,
}

impl TwistAssignment {
    pub fn new(quiver: &Quiver, degrees: Vec<i64>) -> Result<Self> {
        if degrees.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch {
                expected: quiver.arrows().len(),
                actual: degrees.len(),
            });
        }
        Ok(Self { degrees })
    }

    /// Both arrows of [`Quiver::upq`] twisted by `L*`.
    pub fn upq(ctx: &GeometryContext) -> Self {
        Self {
            degrees: vec![-ctx.twist_degree(); 2],
        }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Whether every arrow is twisted by the dual of the context's `L`.
    pub fn is_dual_twist_of(&self, ctx: &GeometryContext) -> bool {
        self.degrees.iter().all(|&d| d == -ctx.twist_degree())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexData {
    pub rank: u32,
    pub degree: i64,
}

/// Per-vertex `(rank, degree)` of a quiver bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverNumericalType {
    vertices: Vec<VertexData>,
}

impl QuiverNumericalType {
    pub fn new(vertices: Vec<VertexData>) -> Result<Self> {
        if vertices.iter().map(|v| u64::from(v.rank)).sum::<u64>() == 0 {
            return Err(Error::InvalidType("total rank must be positive".to_string()));
        }
        Ok(Self { vertices })
    }

    pub fn from_pairs(pairs: &[(u32, i64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(rank, degree)| VertexData { rank, degree })
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn total_rank(&self) -> u64 {
        self.vertices.iter().map(|v| u64::from(v.rank)).sum()
    }

    pub fn total_degree(&self) -> BigInt {
        self.vertices.iter().map(|v| BigInt::from(v.degree)).sum()
    }
}

/// Stability parameter `α = (α_i)`, one entry per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterVector {
    alpha: Vec<Rational>,
}

impl ParameterVector {
    pub fn new(alpha: Vec<Rational>) -> Self {
        Self { alpha }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            alpha: vec![Rational::zero(); n],
        }
    }

    /// The parameter `(α, 0)` on [`Quiver::upq`].
    pub fn upq(alpha: &Rational) -> Self {
        Self {
            alpha: vec![alpha.clone(), Rational::zero()],
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `α + c·(1, …, 1)`.
    pub fn translated(&self, c: &Rational) -> Self {
        Self {
            alpha: self.alpha.iter().map(|x| x + c).collect(),
        }
    }

    /// Translate so that `α_0 = 0`. Stability does not change.
    pub fn normalized(&self) -> Self {
        match self.alpha.first() {
            Some(first) => self.translated(&-first),
            None => self.clone(),
        }
    }

    pub fn check_for(&self, e: &QuiverNumericalType) -> Result<()> {
        if self.len() != e.len() {
            return Err(Error::DimensionMismatch {
                expected: e.len(),
                actual: self.len(),
            });
        }
        Ok(())
    }
}

/// `degree / rank`.
pub fn slope(rank: u32, degree: i64) -> Result<Rational> {
    if rank == 0 {
        return Err(Error::UndefinedSlope);
    }
    Rational::new(degree, rank)
}

/// `μ_α(E) = Σ (deg E_i + α_i rk E_i) / Σ rk E_i`.
pub fn alpha_slope_quiver(e: &QuiverNumericalType, alpha: &ParameterVector) -> Result<Rational> {
    alpha.check_for(e)?;
    let total_rank = e.total_rank();
    if total_rank == 0 {
        return Err(Error::UndefinedSlope);
    }
    let numerator: Rational = e
        .vertices()
        .iter()
        .zip(alpha.values())
        .map(|(v, a)| Rational::from_integer(v.degree) + a * Rational::from_integer(v.rank))
        .sum();
    Ok(numerator / Rational::from_integer(total_rank))
}

/// `μ_α = (a + b)/(p + q) + α·p/(p + q)`.
pub fn alpha_slope_upq(t: &HitchinPairType, alpha: &Rational) -> Rational {
    let n = i64::from(t.total_rank());
    let mu = ratio_i(t.total_degree(), n);
    mu + alpha * ratio_i(i64::from(t.p()), n)
}

/// `τ = 2(qa - pb)/(p + q)`.
pub fn toledo(t: &HitchinPairType) -> Rational {
    let p = BigInt::from(t.p());
    let q = BigInt::from(t.q());
    let num = BigInt::from(2) * (&q * BigInt::from(t.a()) - &p * BigInt::from(t.b()));
    Rational::from(num) / Rational::from(p + q)
}

/// `τ = 2pq/(p + q) · (μ(V) - μ(W))`, the defining form of [`toledo`].
pub fn toledo_from_slopes(t: &HitchinPairType) -> Rational {
    let p = i64::from(t.p());
    let q = i64::from(t.q());
    let weight = ratio_i(2 * p * q, p + q);
    let mu_v = ratio_i(t.a(), p);
    let mu_w = ratio_i(t.b(), q);
    weight * (mu_v - mu_w)
}

/// The gauge parameters `(c₁, c₂)` with `c₂ - c₁ = α` and
/// `p/(p+q)·c₁ + q/(p+q)·c₂ = μ(V ⊕ W)`.
pub fn alpha_to_c_pair(t: &HitchinPairType, alpha: &Rational) -> (Rational, Rational) {
    let n = i64::from(t.total_rank());
    let mu = ratio_i(t.total_degree(), n);
    let c1 = &mu - alpha * ratio_i(i64::from(t.q()), n);
    let c2 = mu + alpha * ratio_i(i64::from(t.p()), n);
    (c1, c2)
}

/// Sign of `μ_α(sub) - μ_α(whole)`.
pub fn compare_at(
    sub: &QuiverNumericalType,
    whole: &QuiverNumericalType,
    alpha: &ParameterVector,
) -> Result<Ordering> {
    if sub.len() != whole.len() {
        return Err(Error::DimensionMismatch {
            expected: whole.len(),
            actual: sub.len(),
        });
    }
    let lhs = alpha_slope_quiver(sub, alpha)?;
    let rhs = alpha_slope_quiver(whole, alpha)?;
    Ok(lhs.cmp(&rhs))
}

fn ratio_i(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("positive denominator")
}
