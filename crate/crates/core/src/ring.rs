//! The free supercommutative ring over ℚ(i, √2): polynomials in even
//! variables and Grassmann (odd) generators.
//!
//! Variables live in an explicit [`RingContext`]. The order in which odd
//! variables were declared is the global order used for canonical forms;
//! every sign produced by multiplication or differentiation comes from the
//! parity of the permutation that sorts odd factors into that order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::FieldScalar;

/// ℤ₂-grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: usize) -> Self {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Sign `(−1)^{|a||b|}`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

static NEXT_CONTEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq)]
struct VarInfo {
    name: String,
    parity: Parity,
}

/// A fixed, read-only set of named variables.
#[derive(Debug)]
pub struct RingContext {
    id: u64,
    vars: Vec<VarInfo>,
    by_name: HashMap<String, usize>,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(vars: &[(S, Parity)]) -> Result<Arc<Self>> {
        Self::build(Vec::new(), vars)
    }

    fn build<S: AsRef<str>>(mut base: Vec<VarInfo>, extra: &[(S, Parity)]) -> Result<Arc<Self>> {
        base.extend(extra.iter().map(|(n, p)| VarInfo {
            name: n.as_ref().to_string(),
            parity: *p,
        }));
        let mut by_name = HashMap::with_capacity(base.len());
        for (i, v) in base.iter().enumerate() {
            if v.name.is_empty() || v.name == "i" || v.name == "r2" {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
            if by_name.insert(v.name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(Arc::new(RingContext {
            id: NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed),
            vars: base,
            by_name,
        }))
    }

    /// A new context with `extra` appended after the existing variables.
    ///
    /// Existing variables keep their indices, so polynomials can be moved
    /// into the extension with [`SuperPoly::rebind`].
    pub fn extend<S: AsRef<str>>(&self, extra: &[(S, Parity)]) -> Result<Arc<Self>> {
        Self::build(self.vars.clone(), extra)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn odd_count(&self) -> usize {
        self.vars.iter().filter(|v| v.parity.is_odd()).count()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.vars[index].name
    }

    pub fn parity_of(&self, index: usize) -> Parity {
        self.vars[index].parity
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Variable> {
        let index = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Variable {
            ctx: Arc::clone(self),
            index,
        })
    }

    pub fn variables(self: &Arc<Self>) -> Vec<Variable> {
        (0..self.vars.len())
            .map(|index| Variable {
                ctx: Arc::clone(self),
                index,
            })
            .collect()
    }

    /// True when `other` declares the same variables at the same indices for
    /// every index below `upto`.
    fn agrees_with(&self, other: &RingContext, upto: usize) -> bool {
        upto <= self.vars.len()
            && upto <= other.vars.len()
            && self.vars[..upto] == other.vars[..upto]
    }
}

/// A handle to one variable of a context.
#[derive(Clone)]
pub struct Variable {
    ctx: Arc<RingContext>,
    index: usize,
}

impl Variable {
    pub fn name(&self) -> &str {
        self.ctx.name(self.index)
    }

    pub fn parity(&self) -> Parity {
        self.ctx.parity_of(self.index)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn poly(&self) -> SuperPoly {
        let mono = match self.parity() {
            Parity::Even => Monomial {
                even: vec![(self.index as u32, 1)],
                odd: vec![],
            },
            Parity::Odd => Monomial {
                even: vec![],
                odd: vec![self.index as u32],
            },
        };
        let mut terms = BTreeMap::new();
        terms.insert(mono, FieldScalar::one());
        SuperPoly {
            ctx: Some(Arc::clone(&self.ctx)),
            terms,
        }
    }
}

impl PartialEq for Variable {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.id == other.ctx.id && self.index == other.index
    }
}

impl Eq for Variable {}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name(), self.parity())
    }
}

/// Exponent vector of even variables together with the sorted set of odd
/// generators. The coefficient is kept alongside in [`SuperPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    even: Vec<(u32, u32)>,
    odd: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.len())
    }

    pub fn odd_degree(&self) -> usize {
        self.odd.len()
    }

    /// Even variables as `(index, exponent)` pairs, sorted by index.
    pub fn even_part(&self) -> &[(u32, u32)] {
        &self.even
    }

    /// Odd generators in the global order.
    pub fn odd_part(&self) -> &[u32] {
        &self.odd
    }

    fn max_index(&self) -> Option<usize> {
        let e = self.even.last().map(|(i, _)| *i);
        let o = self.odd.last().copied();
        e.max(o).map(|i| i as usize)
    }

    /// Product with its sign, or `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        // odd part: count inversions of the concatenation
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() || j < other.odd.len() {
            if j == other.odd.len() || (i < self.odd.len() && self.odd[i] < other.odd[j]) {
                odd.push(self.odd[i]);
                i += 1;
            } else if i == self.odd.len() || other.odd[j] < self.odd[i] {
                // other.odd[j] moves past the remaining self.odd[i..]
                if (self.odd.len() - i) % 2 == 1 {
                    negative = !negative;
                }
                odd.push(other.odd[j]);
                j += 1;
            } else {
                return None;
            }
        }
        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() || j < other.even.len() {
            if j == other.even.len() || (i < self.even.len() && self.even[i].0 < other.even[j].0) {
                even.push(self.even[i]);
                i += 1;
            } else if i == self.even.len() || other.even[j].0 < self.even[i].0 {
                even.push(other.even[j]);
                j += 1;
            } else {
                even.push((self.even[i].0, self.even[i].1 + other.even[j].1));
                i += 1;
                j += 1;
            }
        }
        Some((Monomial { even, odd }, negative))
    }
}

/// An element of the free supercommutative ring of a context.
///
/// Polynomials without variables may carry no context and combine with any
/// context.
#[derive(Clone)]
pub struct SuperPoly {
    ctx: Option<Arc<RingContext>>,
    terms: BTreeMap<Monomial, FieldScalar>,
}

fn merge_ctx(
    a: &Option<Arc<RingContext>>,
    b: &Option<Arc<RingContext>>,
) -> Result<Option<Arc<RingContext>>> {
    match (a, b) {
        (None, None) => Ok(None),
        (Some(c), None) | (None, Some(c)) => Ok(Some(Arc::clone(c))),
        (Some(x), Some(y)) if x.id == y.id => Ok(Some(Arc::clone(x))),
        _ => Err(Error::ContextMismatch),
    }
}

impl SuperPoly {
    pub fn zero() -> Self {
        SuperPoly {
            ctx: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(FieldScalar::one())
    }

    pub fn constant(c: FieldScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        SuperPoly { ctx: None, terms }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(FieldScalar::from_i64(n))
    }

    /// Builds a polynomial from raw terms, dropping zero coefficients and
    /// merging repeated monomials.
    pub fn from_terms(
        ctx: Option<Arc<RingContext>>,
        terms: impl IntoIterator<Item = (Monomial, FieldScalar)>,
    ) -> Self {
        let mut p = SuperPoly {
            ctx,
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn context(&self) -> Option<&Arc<RingContext>> {
        self.ctx.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The pure-scalar part (every variable set to zero).
    pub fn constant_term(&self) -> FieldScalar {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(FieldScalar::zero)
    }

    /// Parity of a homogeneous polynomial; zero reports `Even`.
    /// `None` means the polynomial mixes parities.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        match it.next() {
            None => Some(Parity::Even),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }

    /// True if zero or homogeneous of parity `p`.
    pub fn has_parity(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    /// True when every non-constant monomial contains an odd generator, so
    /// `self − constant_term()` is nilpotent.
    pub fn is_body_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one() || m.odd_degree() > 0)
    }

    pub fn try_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        let ctx = merge_ctx(&self.ctx, &other.ctx)?;
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        big.ctx = ctx;
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        Ok(big)
    }

    pub fn try_sub(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.try_add(&-other)
    }

    /// Supercommutative product.
    pub fn try_mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        let ctx = merge_ctx(&self.ctx, &other.ctx)?;
        let mut out = SuperPoly {
            ctx,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, &if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldScalar) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly {
                ctx: self.ctx.clone(),
                terms: BTreeMap::new(),
            };
        }
        SuperPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn check_var(&self, v: &Variable) -> Result<()> {
        match &self.ctx {
            Some(c) if c.id != v.ctx.id => Err(Error::ContextMismatch),
            _ => Ok(()),
        }
    }

    /// Left partial derivative: the variable is first commuted to the
    /// leftmost position, then removed.
    pub fn left_derivative(&self, v: &Variable) -> Result<SuperPoly> {
        self.check_var(v)?;
        let idx = v.index as u32;
        let mut out = SuperPoly {
            ctx: Some(Arc::clone(&v.ctx)),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            match v.parity() {
                Parity::Odd => {
                    if let Some(pos) = m.odd.iter().position(|&o| o == idx) {
                        let mut odd = m.odd.clone();
                        odd.remove(pos);
                        let mono = Monomial {
                            even: m.even.clone(),
                            odd,
                        };
                        let c = if pos % 2 == 1 { -c } else { c.clone() };
                        out.add_term(mono, &c);
                    }
                }
                Parity::Even => {
                    if let Some(pos) = m.even.iter().position(|&(i, _)| i == idx) {
                        let mut even = m.even.clone();
                        let e = even[pos].1;
                        if e == 1 {
                            even.remove(pos);
                        } else {
                            even[pos].1 -= 1;
                        }
                        let mono = Monomial {
                            even,
                            odd: m.odd.clone(),
                        };
                        out.add_term(mono, &(c * &FieldScalar::from_i64(e as i64)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Simultaneous substitution of variables. Bindings must preserve parity.
    pub fn substitute(&self, bindings: &[(Variable, SuperPoly)]) -> Result<SuperPoly> {
        let mut table: HashMap<u32, &SuperPoly> = HashMap::new();
        for (v, val) in bindings {
            self.check_var(v)?;
            if !val.has_parity(v.parity()) {
                return Err(Error::ParityMismatch(format!(
                    "binding for {} must be {}",
                    v.name(),
                    v.parity()
                )));
            }
            merge_ctx(&Some(Arc::clone(&v.ctx)), &val.ctx)?;
            table.insert(v.index as u32, val);
        }
        if table.is_empty() {
            return Ok(self.clone());
        }
        let ctx = match &self.ctx {
            Some(c) => Some(Arc::clone(c)),
            None => bindings.first().map(|(v, _)| Arc::clone(&v.ctx)),
        };
        let mut out = SuperPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let touched = m.even.iter().any(|(i, _)| table.contains_key(i))
                || m.odd.iter().any(|i| table.contains_key(i));
            if !touched {
                out.add_term(m.clone(), c);
                continue;
            }
            // rebuild the monomial factor by factor, even part first
            let mut acc = SuperPoly {
                ctx: ctx.clone(),
                terms: BTreeMap::new(),
            };
            acc.terms.insert(Monomial::one(), c.clone());
            for &(i, e) in &m.even {
                let factor = match table.get(&i) {
                    Some(val) => (*val).clone(),
                    None => single(
                        ctx.clone(),
                        Monomial {
                            even: vec![(i, 1)],
                            odd: vec![],
                        },
                    ),
                };
                for _ in 0..e {
                    acc = acc.try_mul(&factor)?;
                }
            }
            for &i in &m.odd {
                let factor = match table.get(&i) {
                    Some(val) => (*val).clone(),
                    None => single(
                        ctx.clone(),
                        Monomial {
                            even: vec![],
                            odd: vec![i],
                        },
                    ),
                };
                acc = acc.try_mul(&factor)?;
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, &cc);
            }
        }
        Ok(out)
    }

    /// Sets every listed variable to zero.
    pub fn kill(&self, vars: &[Variable]) -> Result<SuperPoly> {
        let b: Vec<_> = vars
            .iter()
            .map(|v| (v.clone(), SuperPoly::zero()))
            .collect();
        self.substitute(&b)
    }

    /// Moves the polynomial into a context that declares the same variables
    /// at every index it uses (typically an extension of its own context).
    pub fn rebind(&self, ctx: &Arc<RingContext>) -> Result<SuperPoly> {
        if let Some(own) = &self.ctx {
            if own.id != ctx.id {
                let used = self
                    .terms
                    .keys()
                    .filter_map(Monomial::max_index)
                    .max()
                    .map_or(0, |i| i + 1);
                if !own.agrees_with(ctx, used) {
                    return Err(Error::ContextMismatch);
                }
            }
        }
        Ok(SuperPoly {
            ctx: Some(Arc::clone(ctx)),
            terms: self.terms.clone(),
        })
    }

    /// Indices of all variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| {
                m.even
                    .iter()
                    .map(|(i, _)| *i as usize)
                    .chain(m.odd.iter().map(|i| *i as usize))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Groups terms by monomial: `self = Σ mono · coefficient`.
    pub fn coefficients(&self) -> &BTreeMap<Monomial, FieldScalar> {
        &self.terms
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn single(ctx: Option<Arc<RingContext>>, m: Monomial) -> SuperPoly {
    let mut terms = BTreeMap::new();
    terms.insert(m, FieldScalar::one());
    SuperPoly { ctx, terms }
}

impl PartialEq for SuperPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.terms != other.terms {
            return false;
        }
        match (&self.ctx, &other.ctx) {
            (Some(a), Some(b)) if a.id != b.id => self.is_constant(),
            _ => true,
        }
    }
}

impl Eq for SuperPoly {}

impl Default for SuperPoly {
    fn default() -> Self {
        SuperPoly::zero()
    }
}

impl From<FieldScalar> for SuperPoly {
    fn from(c: FieldScalar) -> Self {
        SuperPoly::constant(c)
    }
}

impl<'a> Add<&'a SuperPoly> for &'a SuperPoly {
    type Output = SuperPoly;
    /// Panics on mixed contexts; use [`SuperPoly::try_add`] to handle that.
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_add(rhs).expect("ring context mismatch")
    }
}

impl<'a> Sub<&'a SuperPoly> for &'a SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_sub(rhs).expect("ring context mismatch")
    }
}

impl<'a> Mul<&'a SuperPoly> for &'a SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_mul(rhs).expect("ring context mismatch")
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        SuperPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: SuperPoly) -> SuperPoly {
        &self + &rhs
    }
}

impl Sub for SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: SuperPoly) -> SuperPoly {
        &self - &rhs
    }
}

impl Mul for SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: SuperPoly) -> SuperPoly {
        &self * &rhs
    }
}

impl Neg for SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        -&self
    }
}

fn render_monomial(ctx: Option<&Arc<RingContext>>, m: &Monomial) -> String {
    let name = |i: u32| match ctx {
        Some(c) => c.name(i as usize).to_string(),
        None => format!("v{i}"),
    };
    let mut parts = Vec::new();
    for &(i, e) in &m.even {
        if e == 1 {
            parts.push(name(i));
        } else {
            parts.push(format!("{}^{}", name(i), e));
        }
    }
    for &i in &m.odd {
        parts.push(name(i));
    }
    parts.join("*")
}

impl fmt::Display for SuperPoly {
    /// Terms in canonical order, odd factors in the global order, e.g.
    /// `x1_1 - 1/2*xi1_1*eta1_11`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = render_monomial(self.ctx.as_ref(), m);
            let (negative, coef) = match c.as_rational() {
                Some(q) => {
                    let neg = q < &num_rational::BigRational::from_integer(0.into());
                    let abs = if neg { -c } else { c.clone() };
                    (neg, abs.to_string())
                }
                None => (false, format!("({c})")),
            };
            let body = if mono.is_empty() {
                coef
            } else if coef == "1" {
                mono
            } else {
                format!("{coef}*{mono}")
            };
            match (k == 0, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<RingContext> {
        RingContext::new(&[
            ("x", Parity::Even),
            ("z", Parity::Even),
            ("xi", Parity::Odd),
            ("eta", Parity::Odd),
        ])
        .unwrap()
    }

    #[test]
    fn odd_generators_anticommute() {
        let c = ctx();
        let xi = c.var("xi").unwrap().poly();
        let eta = c.var("eta").unwrap().poly();
        let xe = &xi * &eta;
        assert_eq!(&eta * &xi, -&xe);
        assert_eq!(xe.to_string(), "xi*eta");
        assert!((&xi * &xi).is_zero());
    }

    #[test]
    fn nilpotent_cross_terms_vanish() {
        let c = ctx();
        let x = c.var("x").unwrap().poly();
        let xe = &c.var("xi").unwrap().poly() * &c.var("eta").unwrap().poly();
        let p = &x + &xe;
        let q = &x - &xe;
        assert_eq!(&p * &q, &x * &x);
    }

    #[test]
    fn left_derivative_examples() {
        let c = ctx();
        let xi_v = c.var("xi").unwrap();
        let eta_v = c.var("eta").unwrap();
        let x_v = c.var("x").unwrap();
        let xi = xi_v.poly();
        let eta = eta_v.poly();
        let x = x_v.poly();
        let xe = &xi * &eta;
        assert_eq!(xe.left_derivative(&xi_v).unwrap(), eta);
        assert_eq!(xe.left_derivative(&eta_v).unwrap(), -&xi);
        let p = &(&x * &x) * &eta;
        assert_eq!(
            p.left_derivative(&x_v).unwrap(),
            (&x * &eta).scale(&FieldScalar::from_i64(2))
        );
    }

    #[test]
    fn substitution_examples() {
        let c = ctx();
        let x = c.var("x").unwrap().poly();
        let z_v = c.var("z").unwrap();
        let p = &z_v.poly() + &(&x * &x);
        let r = p.substitute(&[(z_v, -&(&x * &x))]).unwrap();
        assert!(r.is_zero());

        let xi = c.var("xi").unwrap().poly();
        let eta_v = c.var("eta").unwrap();
        let q = &xi * &eta_v.poly();
        assert!(q.substitute(&[(eta_v, -&xi)]).unwrap().is_zero());
    }

    #[test]
    fn substitution_rejects_parity_change() {
        let c = ctx();
        let eta_v = c.var("eta").unwrap();
        let err = eta_v
            .poly()
            .substitute(&[(eta_v.clone(), c.var("x").unwrap().poly())]);
        assert!(matches!(err, Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn contexts_do_not_mix() {
        let a = ctx();
        let b = ctx();
        let p = a.var("x").unwrap().poly();
        let q = b.var("x").unwrap().poly();
        assert_eq!(p.try_mul(&q), Err(Error::ContextMismatch));
        // constants are context-free
        assert!(p.try_mul(&SuperPoly::from_i64(3)).is_ok());
    }

    #[test]
    fn rebind_into_extension() {
        let a = ctx();
        let b = a.extend(&[("tau", Parity::Odd)]).unwrap();
        let p = &a.var("xi").unwrap().poly() * &a.var("x").unwrap().poly();
        let q = p.rebind(&b).unwrap();
        let tau = b.var("tau").unwrap().poly();
        assert_eq!((&tau * &q).to_string(), "-x*xi*tau");
        assert!(q.rebind(&a).is_ok());
        let t = tau.rebind(&a);
        assert_eq!(t, Err(Error::ContextMismatch));
    }
}
