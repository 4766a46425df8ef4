//! Roots and weights of `so(2s+1) ⊕ sp(2n)` in the orthonormal basis
//! `μ₁,…,μ_s, λ₁,…,λ_n`, dominance, and the Borel–Weil–Bott filter applied to
//! the isotropy representation on vertical vector fields.

use std::fmt;

use crate::error::{Error, Result};

/// Integer weight `Σ a_i μ_i + Σ b_p λ_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub mu: Vec<i64>,
    pub lambda: Vec<i64>,
}

impl Weight {
    pub fn zero(s: usize, n: usize) -> Self {
        Weight {
            mu: vec![0; s],
            lambda: vec![0; n],
        }
    }

    /// `μ_i` (1-based).
    pub fn mu(s: usize, n: usize, i: usize) -> Self {
        let mut w = Self::zero(s, n);
        w.mu[i - 1] = 1;
        w
    }

    /// `λ_p` (1-based).
    pub fn lambda(s: usize, n: usize, p: usize) -> Self {
        let mut w = Self::zero(s, n);
        w.lambda[p - 1] = 1;
        w
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.mu.len(), self.lambda.len())
    }

    pub fn is_zero(&self) -> bool {
        self.mu.iter().chain(&self.lambda).all(|&x| x == 0)
    }

    pub fn dot(&self, other: &Weight) -> Result<i64> {
        if self.ranks() != other.ranks() {
            return Err(Error::InvalidSize(format!(
                "weights of ranks {:?} and {:?}",
                self.ranks(),
                other.ranks()
            )));
        }
        Ok(self
            .mu
            .iter()
            .zip(&other.mu)
            .chain(self.lambda.iter().zip(&other.lambda))
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn scale(&self, c: i64) -> Weight {
        Weight {
            mu: self.mu.iter().map(|x| x * c).collect(),
            lambda: self.lambda.iter().map(|x| x * c).collect(),
        }
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight {
            mu: self.mu.iter().zip(&o.mu).map(|(a, b)| a + b).collect(),
            lambda: self
                .lambda
                .iter()
                .zip(&o.lambda)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        self + &o.scale(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .mu
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, format!("mu{}", i + 1)))
            .chain(
                self.lambda
                    .iter()
                    .enumerate()
                    .map(|(p, &c)| (c, format!("lambda{}", p + 1))),
            )
            .filter(|(c, _)| *c != 0);
        let mut out = String::new();
        for (c, name) in terms {
            let body = if c.abs() == 1 {
                name
            } else {
                format!("{}*{name}", c.abs())
            };
            if out.is_empty() {
                out = if c < 0 { format!("-{body}") } else { body };
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Positive and simple roots of `so(2s+1) ⊕ sp(2n)`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    s: usize,
    n: usize,
    positive_so: Vec<Weight>,
    positive_sp: Vec<Weight>,
    simple: Vec<Weight>,
}

pub fn root_system(s: usize, n: usize) -> RootSystem {
    let mu = |i| Weight::mu(s, n, i);
    let la = |p| Weight::lambda(s, n, p);
    let mut so = Vec::new();
    for i in 1..=s {
        for j in i + 1..=s {
            so.push(&mu(i) - &mu(j));
            so.push(&mu(i) + &mu(j));
        }
    }
    so.extend((1..=s).map(mu));
    let mut sp = Vec::new();
    for p in 1..=n {
        for q in p + 1..=n {
            sp.push(&la(p) - &la(q));
        }
        for q in p..=n {
            sp.push(&la(p) + &la(q));
        }
    }
    let mut simple: Vec<Weight> = (1..s).map(|i| &mu(i) - &mu(i + 1)).collect();
    if s > 0 {
        simple.push(mu(s));
    }
    simple.extend((1..n).map(|j| &la(j) - &la(j + 1)));
    if n > 0 {
        simple.push(la(n).scale(2));
    }
    RootSystem {
        s,
        n,
        positive_so: so,
        positive_sp: sp,
        simple,
    }
}

impl RootSystem {
    pub fn ranks(&self) -> (usize, usize) {
        (self.s, self.n)
    }

    /// `Δ⁺₁`.
    pub fn positive_so(&self) -> &[Weight] {
        &self.positive_so
    }

    /// `Δ⁺₂`.
    pub fn positive_sp(&self) -> &[Weight] {
        &self.positive_sp
    }

    pub fn positive(&self) -> impl Iterator<Item = &Weight> {
        self.positive_so.iter().chain(&self.positive_sp)
    }

    /// `Φ₁ ∪ Φ₂`.
    pub fn simple(&self) -> &[Weight] {
        &self.simple
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.ranks() != (self.s, self.n) {
            return Err(Error::InvalidSize(format!(
                "weight of ranks {:?} for a root system of ranks {:?}",
                w.ranks(),
                (self.s, self.n)
            )));
        }
        Ok(())
    }

    /// First positive root pairing negatively with `w`.
    pub fn violating_root(&self, w: &Weight) -> Result<Option<Weight>> {
        self.check(w)?;
        for a in self.positive() {
            if w.dot(a)? < 0 {
                return Ok(Some(a.clone()));
            }
        }
        Ok(None)
    }

    /// `(w, α) ≥ 0` for every positive root.
    pub fn is_dominant(&self, w: &Weight) -> Result<bool> {
        Ok(self.violating_root(w)?.is_none())
    }

    /// `(w, α) ≥ 0` for every simple root.
    pub fn is_dominant_simple(&self, w: &Weight) -> Result<bool> {
        self.check(w)?;
        for a in &self.simple {
            if w.dot(a)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn is_dominant(w: &Weight, rs: &RootSystem) -> Result<bool> {
    rs.is_dominant(w)
}

/// Highest weights of `ψ|R` for the base `IF_{2k₁−1,k₁−1|2l₁,l₁}`, in the
/// rank context `s = k₁−1`, `n = l₁`.
pub fn psi_highest_weights(k1: usize, l1: usize) -> Vec<Weight> {
    if k1 == 0 {
        return Vec::new();
    }
    let (s, n) = (k1 - 1, l1);
    let mu = |i| Weight::mu(s, n, i);
    let la = |p| Weight::lambda(s, n, p);
    let mut out = Vec::new();
    if l1 == 0 {
        if k1 > 2 {
            out.push(&mu(1) - &mu(k1 - 1));
        }
        return out;
    }
    if k1 > 2 {
        out.push(&mu(1) - &mu(k1 - 1));
    }
    if k1 >= 2 {
        out.push(&mu(1) - &la(l1));
        out.push(&la(1) - &mu(k1 - 1));
    }
    if l1 > 1 {
        out.push(&la(1) - &la(l1));
    }
    if k1 >= 2 {
        out.push(Weight::zero(s, n));
    }
    out
}

/// The dominant weights of the list, multiplicities kept.
pub fn bwb_dominant_filter(weights: &[Weight], rs: &RootSystem) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for w in weights {
        if rs.is_dominant(w)? {
            out.push(w.clone());
        }
    }
    Ok(out)
}

/// `W̃₀(ℬ₀)` as an `osp₀`-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberDescription {
    /// The trivial one-dimensional module.
    Trivial,
    Zero,
}

impl fmt::Display for FiberDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberDescription::Trivial => "ℂ",
            FiberDescription::Zero => "{0}",
        })
    }
}

pub fn w0_fiber_description(k1: usize, l1: usize) -> Result<FiberDescription> {
    if k1 == 0 || l1 == 0 {
        return Err(Error::InvalidSize("k1 and l1 must be at least 1".into()));
    }
    let rs = root_system(k1 - 1, l1);
    let dominant = bwb_dominant_filter(&psi_highest_weights(k1, l1), &rs)?;
    match dominant.as_slice() {
        [] => Ok(FiberDescription::Zero),
        [w] if w.is_zero() => Ok(FiberDescription::Trivial),
        _ => Err(Error::UnexpectedDominantWeight(
            dominant
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        )),
    }
}
