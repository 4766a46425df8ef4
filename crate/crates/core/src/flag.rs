//! Flag supermanifold charts, the supergroup action on them, fundamental
//! vector fields and the isotropic chart of maximal type.
//!
//! A chart of `F_{k|l}` is a list of coordinate matrices `Z_s` of size
//! `(k_{s−1}+l_{s−1}) × (k_s+l_s)`, each containing an identity submatrix in the
//! rows selected by the index set `I_s`. `L ∈ GL(m|n)` acts by
//! `Z̃₁ = L Z₁ C₁⁻¹`, `Z̃_s = C_{s−1} Z_s C_s⁻¹` with `C_s` the rows of the target
//! index set.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{BlockShape, NumMatrix, SuperMatrix};
use crate::osp::{self, Flavor, Generator, GramForm, Tag};
use crate::ring::{Parity, RingContext, SuperPoly, Variable};
use crate::scalar::FieldScalar;

pub type PolyMatrix = SuperMatrix<SuperPoly>;

/// `k = (k₀,…,k_r)`, `l = (l₀,…,l_r)` with `k_r ≤ … ≤ k₀ = m`,
/// `l_r ≤ … ≤ l₀ = n` and `0 < k_r+l_r < … < k₀+l₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagType {
    k: Vec<usize>,
    l: Vec<usize>,
}

impl FlagType {
    pub fn new(k: Vec<usize>, l: Vec<usize>) -> Result<Self> {
        if k.len() != l.len() {
            return Err(Error::InvalidFlagType(format!(
                "k has {} entries, l has {}",
                k.len(),
                l.len()
            )));
        }
        if k.len() < 2 {
            return Err(Error::InvalidFlagType(
                "a flag type needs at least two entries".into(),
            ));
        }
        for s in 1..k.len() {
            if k[s] > k[s - 1] || l[s] > l[s - 1] {
                return Err(Error::InvalidFlagType(format!(
                    "k and l must be non-increasing (step {s})"
                )));
            }
            if k[s] + l[s] >= k[s - 1] + l[s - 1] {
                return Err(Error::InvalidFlagType(format!(
                    "k_s + l_s must decrease strictly: {} >= {} at step {s}",
                    k[s] + l[s],
                    k[s - 1] + l[s - 1]
                )));
            }
        }
        let r = k.len() - 1;
        if k[r] + l[r] == 0 {
            return Err(Error::InvalidFlagType("k_r + l_r must be positive".into()));
        }
        Ok(FlagType { k, l })
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn l(&self) -> &[usize] {
        &self.l
    }

    /// Number of flag steps.
    pub fn r(&self) -> usize {
        self.k.len() - 1
    }

    pub fn m(&self) -> usize {
        self.k[0]
    }

    pub fn n(&self) -> usize {
        self.l[0]
    }

    /// `(k′|l′) = (k₁,…,k_r | l₁,…,l_r)`, if it is again a flag type.
    pub fn fiber(&self) -> Result<FlagType> {
        FlagType::new(self.k[1..].to_vec(), self.l[1..].to_vec())
    }

    /// `(even, odd)` dimension.
    pub fn dimension(&self) -> (usize, usize) {
        let (k, l) = (&self.k, &self.l);
        (1..k.len()).fold((0, 0), |(e, o), s| {
            (
                e + (k[s - 1] - k[s]) * k[s] + (l[s - 1] - l[s]) * l[s],
                o + (k[s - 1] - k[s]) * l[s] + (l[s - 1] - l[s]) * k[s],
            )
        })
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "k=({}) l=({})", j(&self.k), j(&self.l))
    }
}

/// Index sets `I_s = (I_{s0̄}, I_{s1̄})`, stored 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    steps: Vec<(Vec<usize>, Vec<usize>)>,
}

impl IndexSets {
    /// From 1-based index lists.
    pub fn new(steps: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        let mut out = Vec::with_capacity(steps.len());
        for (s, (e, o)) in steps.into_iter().enumerate() {
            let conv = |v: Vec<usize>| -> Result<Vec<usize>> {
                let mut w = v
                    .into_iter()
                    .map(|i| {
                        i.checked_sub(1)
                            .ok_or_else(|| Error::InvalidIndexSets("indices are 1-based".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                w.sort_unstable();
                if w.windows(2).any(|p| p[0] == p[1]) {
                    return Err(Error::InvalidIndexSets(format!(
                        "repeated index in I{}",
                        s + 1
                    )));
                }
                Ok(w)
            };
            out.push((conv(e)?, conv(o)?));
        }
        Ok(IndexSets { steps: out })
    }

    /// `I_s = ({1..k_s}, {1..l_s})` for every step.
    pub fn first_rows(ft: &FlagType) -> Self {
        IndexSets {
            steps: (1..=ft.r())
                .map(|s| ((0..ft.k[s]).collect(), (0..ft.l[s]).collect()))
                .collect(),
        }
    }

    /// Parses one step, `"2;2"` or `"1,3;"` (even indices `;` odd indices).
    pub fn parse_step(text: &str) -> Result<(Vec<usize>, Vec<usize>)> {
        let (e, o) = text
            .split_once(';')
            .ok_or_else(|| Error::InvalidIndexSets(format!("expected `even;odd` in `{text}`")))?;
        let list = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<usize>()
                        .map_err(|_| Error::InvalidIndexSets(format!("bad index `{x}`")))
                })
                .collect()
        };
        Ok((list(e)?, list(o)?))
    }

    pub fn steps(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.steps
    }

    pub fn validate(&self, ft: &FlagType) -> Result<()> {
        if self.steps.len() != ft.r() {
            return Err(Error::InvalidIndexSets(format!(
                "expected {} index sets, got {}",
                ft.r(),
                self.steps.len()
            )));
        }
        for (s, (e, o)) in self.steps.iter().enumerate() {
            let s1 = s + 1;
            if e.len() != ft.k[s1] || o.len() != ft.l[s1] {
                return Err(Error::InvalidIndexSets(format!(
                    "|I{s1}| = ({}, {}) but (k_{s1}, l_{s1}) = ({}, {})",
                    e.len(),
                    o.len(),
                    ft.k[s1],
                    ft.l[s1]
                )));
            }
            if e.iter().any(|&i| i >= ft.k[s]) || o.iter().any(|&i| i >= ft.l[s]) {
                return Err(Error::InvalidIndexSets(format!(
                    "index out of range in I{s1}"
                )));
            }
        }
        Ok(())
    }

    /// Rows of `Z_s` (0-based, even rows then odd rows) holding the identity.
    pub fn rows(&self, ft: &FlagType, s: usize) -> Vec<usize> {
        let (e, o) = &self.steps[s - 1];
        e.iter()
            .copied()
            .chain(o.iter().map(|i| ft.k[s - 1] + i))
            .collect()
    }
}

impl fmt::Display for IndexSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[usize]| {
            v.iter()
                .map(|x| (x + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let parts: Vec<String> = self
            .steps
            .iter()
            .enumerate()
            .map(|(s, (e, o))| format!("I{}={};{}", s + 1, j(e), j(o)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// An independent coordinate and its slot `(step, row, col)` (step 1-based,
/// row and column 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Coordinate {
    pub step: usize,
    pub row: usize,
    pub col: usize,
    pub var: Variable,
}

/// A slot whose entry is a function of the independent coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Dependent {
    pub step: usize,
    pub row: usize,
    pub col: usize,
    pub name: String,
    pub expr: SuperPoly,
}

/// Coordinate matrices of one chart (or their transforms).
#[derive(Clone, Debug)]
pub struct Chart {
    flag: FlagType,
    index: IndexSets,
    ctx: Arc<RingContext>,
    steps: Vec<PolyMatrix>,
    coordinates: Vec<Coordinate>,
    dependent: Vec<Dependent>,
}

fn step_shapes(ft: &FlagType, s: usize) -> (BlockShape, BlockShape) {
    (
        BlockShape::new(ft.k[s - 1], ft.l[s - 1]),
        BlockShape::new(ft.k[s], ft.l[s]),
    )
}

/// Name of the generic coordinate in slot `(row, col)` of `Z_s`.
fn generic_name(ft: &FlagType, s: usize, row: usize, col: usize) -> (String, Parity) {
    let (ke, ks) = (ft.k[s - 1], ft.k[s]);
    let (re, ce) = (row < ke, col < ks);
    let (r, c) = (
        if re { row } else { row - ke } + 1,
        if ce { col } else { col - ks } + 1,
    );
    match (re, ce) {
        (true, true) => (format!("x{s}_{r}_{c}"), Parity::Even),
        (true, false) => (format!("xi{s}_{r}_{c}"), Parity::Odd),
        (false, true) => (format!("eta{s}_{r}_{c}"), Parity::Odd),
        (false, false) => (format!("y{s}_{r}_{c}"), Parity::Even),
    }
}

/// Fills `Z_s` with identity rows and the given slot values.
fn assemble(
    ft: &FlagType,
    index: &IndexSets,
    s: usize,
    value: impl Fn(usize, usize) -> SuperPoly,
) -> Result<PolyMatrix> {
    let (rs, cs) = step_shapes(ft, s);
    let id_rows = index.rows(ft, s);
    let mut data = vec![vec![SuperPoly::zero(); cs.dim()]; rs.dim()];
    for (r, row) in data.iter_mut().enumerate() {
        if let Some(p) = id_rows.iter().position(|&x| x == r) {
            row[p] = SuperPoly::one();
        } else {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = value(r, c);
            }
        }
    }
    PolyMatrix::from_rows(rs, cs, data)
}

impl Chart {
    /// Chart with fresh coordinates in every non-identity slot.
    pub fn build(ft: &FlagType, index: &IndexSets) -> Result<Chart> {
        index.validate(ft)?;
        let mut names = Vec::new();
        let mut slots = Vec::new();
        for s in 1..=ft.r() {
            let (rs, cs) = step_shapes(ft, s);
            let id_rows = index.rows(ft, s);
            for r in 0..rs.dim() {
                if id_rows.contains(&r) {
                    continue;
                }
                for c in 0..cs.dim() {
                    names.push(generic_name(ft, s, r, c));
                    slots.push((s, r, c));
                }
            }
        }
        let ctx = RingContext::new(&names)?;
        let vars = ctx.variables();
        let coordinates: Vec<Coordinate> = slots
            .iter()
            .zip(&vars)
            .map(|(&(step, row, col), v)| Coordinate {
                step,
                row,
                col,
                var: v.clone(),
            })
            .collect();
        let lookup: BTreeMap<(usize, usize, usize), SuperPoly> = coordinates
            .iter()
            .map(|c| ((c.step, c.row, c.col), c.var.poly()))
            .collect();
        let steps = (1..=ft.r())
            .map(|s| assemble(ft, index, s, |r, c| lookup[&(s, r, c)].clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Chart {
            flag: ft.clone(),
            index: index.clone(),
            ctx,
            steps,
            coordinates,
            dependent: Vec::new(),
        })
    }

    pub fn flag(&self) -> &FlagType {
        &self.flag
    }

    pub fn index(&self) -> &IndexSets {
        &self.index
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    /// Coordinate matrix `Z_s` (1-based).
    pub fn step(&self, s: usize) -> &PolyMatrix {
        &self.steps[s - 1]
    }

    pub fn steps(&self) -> &[PolyMatrix] {
        &self.steps
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coordinates
    }

    pub fn dependent(&self) -> &[Dependent] {
        &self.dependent
    }

    pub fn coordinate(&self, name: &str) -> Option<&Coordinate> {
        self.coordinates.iter().find(|c| c.var.name() == name)
    }

    /// Moves every matrix into a context extending this chart's.
    pub fn rebind(&self, ctx: &Arc<RingContext>) -> Result<Chart> {
        let steps = self
            .steps
            .iter()
            .map(|m| m.rebind(ctx))
            .collect::<Result<Vec<_>>>()?;
        let coordinates = self
            .coordinates
            .iter()
            .map(|c| {
                Ok(Coordinate {
                    var: ctx.var(c.var.name())?,
                    ..c.clone()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let dependent = self
            .dependent
            .iter()
            .map(|d| {
                Ok(Dependent {
                    expr: d.expr.rebind(ctx)?,
                    ..d.clone()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Chart {
            ctx: ctx.clone(),
            steps,
            coordinates,
            dependent,
            ..self.clone()
        })
    }

    /// Same coordinate matrices (contexts may differ if compatible).
    pub fn same_matrices(&self, other: &Chart) -> bool {
        self.steps == other.steps
    }

    /// Canonical text form, one line per step.
    pub fn render(&self) -> String {
        self.steps
            .iter()
            .enumerate()
            .map(|(s, m)| format!("Z{} = [{}]", s + 1, m.to_literal()))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub fn build_chart(ft: &FlagType, index: &IndexSets) -> Result<Chart> {
    Chart::build(ft, index)
}

fn matrix_context(l: &PolyMatrix) -> Option<Arc<RingContext>> {
    l.entries().iter().find_map(|e| e.context().cloned())
}

/// `(L, (Z₁,…,Z_r)) ↦ (L Z₁ C₁⁻¹, C₁ Z₂ C₂⁻¹, …)` for the target index sets
/// (defaults to the chart's own).
pub fn act(l: &PolyMatrix, chart: &Chart, target: Option<&IndexSets>) -> Result<Chart> {
    let ft = &chart.flag;
    let shape = BlockShape::new(ft.m(), ft.n());
    if !l.is_square() || !l.row_shape().compatible(&shape) {
        return Err(Error::ShapeMismatch(format!(
            "L must be ({}|{}) x ({}|{})",
            ft.m(),
            ft.n(),
            ft.m(),
            ft.n()
        )));
    }
    let chart = match matrix_context(l) {
        Some(ctx) if ctx.id() != chart.ctx.id() => chart.rebind(&ctx)?,
        _ => chart.clone(),
    };
    let index = target.cloned().unwrap_or_else(|| chart.index.clone());
    index.validate(ft)?;
    let mut m = l.try_mul(&chart.steps[0])?;
    let mut steps = Vec::with_capacity(ft.r());
    for s in 1..=ft.r() {
        let rows = index.rows(ft, s);
        let cols: Vec<usize> = (0..m.ncols()).collect();
        let c = m.submatrix(&rows, &cols);
        let cinv = c.invert()?;
        steps.push(m.try_mul(&cinv)?);
        if s < ft.r() {
            m = c.try_mul(&chart.steps[s])?;
        }
    }
    Ok(Chart {
        index,
        steps,
        ..chart
    })
}

/// A vector field `Σ v_z ∂/∂z` over the independent coordinates of a chart,
/// acting by left derivatives.
#[derive(Clone, Debug)]
pub struct Derivation {
    ctx: Arc<RingContext>,
    parity: Parity,
    coeffs: BTreeMap<usize, SuperPoly>,
}

impl Derivation {
    pub fn new(
        ctx: &Arc<RingContext>,
        parity: Parity,
        terms: impl IntoIterator<Item = (Variable, SuperPoly)>,
    ) -> Result<Self> {
        let mut coeffs: BTreeMap<usize, SuperPoly> = BTreeMap::new();
        for (v, c) in terms {
            if v.context().id() != ctx.id() {
                return Err(Error::ContextMismatch);
            }
            let slot = coeffs.entry(v.index()).or_default();
            *slot = slot.try_add(&c.rebind(ctx)?)?;
        }
        coeffs.retain(|_, c| !c.is_zero());
        for (&i, c) in &coeffs {
            if !c.has_parity(ctx.parity_of(i) + parity) {
                return Err(Error::ParityMismatch(format!(
                    "coefficient of d/d{} has the wrong parity",
                    ctx.name(i)
                )));
            }
        }
        Ok(Derivation {
            ctx: ctx.clone(),
            parity,
            coeffs,
        })
    }

    pub fn zero(ctx: &Arc<RingContext>, parity: Parity) -> Self {
        Derivation {
            ctx: ctx.clone(),
            parity,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `∂/∂name` (zero if absent).
    pub fn coefficient(&self, name: &str) -> SuperPoly {
        self.ctx
            .index_of(name)
            .and_then(|i| self.coeffs.get(&i).cloned())
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &SuperPoly)> {
        self.coeffs.iter().map(|(&i, c)| (self.ctx.name(i), c))
    }

    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        let f = f.rebind(&self.ctx)?;
        let mut acc = SuperPoly::zero();
        for (&i, c) in &self.coeffs {
            let v = self.ctx.var(self.ctx.name(i))?;
            let d = f.left_derivative(&v)?;
            if !d.is_zero() {
                acc = acc.try_add(&c.try_mul(&d)?)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &FieldScalar) -> Derivation {
        let mut out = self.clone();
        out.coeffs.values_mut().for_each(|p| *p = p.scale(c));
        out.coeffs.retain(|_, p| !p.is_zero());
        out
    }

    pub fn try_add(&self, other: &Derivation) -> Result<Derivation> {
        if self.ctx.id() != other.ctx.id() {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            let slot = out.coeffs.entry(i).or_default();
            *slot = slot.try_add(c)?;
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        if !self.is_zero() && !other.is_zero() && self.parity != other.parity {
            return Err(Error::Inhomogeneous);
        }
        if self.is_zero() {
            out.parity = other.parity;
        }
        Ok(out)
    }

    /// `[D₁, D₂] = D₁D₂ − (−1)^{|D₁||D₂|} D₂D₁`, computed on coordinates.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        if self.ctx.id() != other.ctx.id() {
            return Err(Error::ContextMismatch);
        }
        let sign = self.parity.koszul(other.parity);
        let mut coeffs = BTreeMap::new();
        let indices: std::collections::BTreeSet<usize> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        for i in indices {
            let a = other
                .coeffs
                .get(&i)
                .map(|c| self.apply(c))
                .transpose()?
                .unwrap_or_default();
            let b = self
                .coeffs
                .get(&i)
                .map(|c| other.apply(c))
                .transpose()?
                .unwrap_or_default();
            let v = if sign < 0 {
                a.try_add(&b)?
            } else {
                a.try_sub(&b)?
            };
            if !v.is_zero() {
                coeffs.insert(i, v);
            }
        }
        Ok(Derivation {
            ctx: self.ctx.clone(),
            parity: self.parity + other.parity,
            coeffs,
        })
    }
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.id() == other.ctx.id()
            && self.coeffs == other.coeffs
            && (self.is_zero() || self.parity == other.parity)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (name, c) in self.terms() {
            let text = c.to_string();
            let neg_unit = text == "-1";
            if c.num_terms() == 1 && (text == "1" || neg_unit) {
                let sign = if neg_unit {
                    "-"
                } else if first {
                    ""
                } else {
                    "+"
                };
                if first {
                    write!(f, "{sign}d/d{name}")?;
                } else {
                    write!(f, " {sign} d/d{name}")?;
                }
            } else if c.num_terms() == 1 && text.starts_with('-') {
                if first {
                    write!(f, "-{}*d/d{name}", &text[1..])?;
                } else {
                    write!(f, " - {}*d/d{name}", &text[1..])?;
                }
            } else if c.num_terms() == 1 {
                if first {
                    write!(f, "{text}*d/d{name}")?;
                } else {
                    write!(f, " + {text}*d/d{name}")?;
                }
            } else if first {
                write!(f, "({text})*d/d{name}")?;
            } else {
                write!(f, " + ({text})*d/d{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Output of [`fundamental_field`].
#[derive(Clone, Debug)]
pub struct FundamentalField {
    pub derivation: Derivation,
    /// Dependent slots whose first-order change disagrees with the field
    /// applied to their defining expression (empty when tangent).
    pub tangency_defects: Vec<String>,
}

const TAU: &str = "tau__";
const THETA1: &str = "theta1__";
const THETA2: &str = "theta2__";

/// First-order action of `E + tX` on the chart (`t` odd for odd `X`, `t = θ₁θ₂`
/// for even `X`); the `t`-linear parts of the independent coordinates are the
/// coefficients of the field.
pub fn fundamental_field(x: &NumMatrix, chart: &Chart) -> Result<FundamentalField> {
    let parity = x.parity().ok_or(Error::Inhomogeneous)?;
    let extra: Vec<(&str, Parity)> = match parity {
        Parity::Odd => vec![(TAU, Parity::Odd)],
        Parity::Even => vec![(THETA1, Parity::Odd), (THETA2, Parity::Odd)],
    };
    let ext = chart.ctx.extend(&extra)?;
    let t = match parity {
        Parity::Odd => ext.var(TAU)?.poly(),
        Parity::Even => ext.var(THETA1)?.poly().try_mul(&ext.var(THETA2)?.poly())?,
    };
    let shape = x.row_shape().clone();
    let l = PolyMatrix::identity(shape).try_add(&x.lift().rebind(&ext)?.left_mul_entries(&t)?)?;
    let moved = act(&l, &chart.rebind(&ext)?, None)?;
    let first_order = |p: &SuperPoly| -> Result<SuperPoly> {
        let out = match parity {
            Parity::Odd => {
                let tau = ext.var(TAU)?;
                p.left_derivative(&tau)?.kill(&[tau])?
            }
            Parity::Even => {
                let (t1, t2) = (ext.var(THETA1)?, ext.var(THETA2)?);
                p.left_derivative(&t1)?
                    .left_derivative(&t2)?
                    .kill(&[t1, t2])?
            }
        };
        out.rebind(&chart.ctx)
    };
    let mut terms = Vec::new();
    for c in &chart.coordinates {
        let v = first_order(moved.steps[c.step - 1].get(c.row, c.col))?;
        terms.push((c.var.clone(), v));
    }
    let derivation = Derivation::new(&chart.ctx, parity, terms)?;
    let mut defects = Vec::new();
    for d in &chart.dependent {
        let lhs = first_order(moved.steps[d.step - 1].get(d.row, d.col))?;
        let rhs = derivation.apply(&d.expr)?;
        if lhs != rhs {
            defects.push(d.name.clone());
        }
    }
    Ok(FundamentalField {
        derivation,
        tangency_defects: defects,
    })
}

/// Sign `c` in `[ν(X), ν(Y)] = c·ν([X, Y])` for homogeneous `X`, `Y`:
/// `−(−1)^{|X||Y|}`. The Grassmann-envelope action makes `ν` an
/// anti-homomorphism, twisted by the Koszul sign on odd pairs.
pub fn nu_bracket_sign(p: Parity, q: Parity) -> i64 {
    if p == Parity::Odd && q == Parity::Odd {
        1
    } else {
        -1
    }
}

/// Pairs of generators violating `[ν(X), ν(Y)] = c·ν([X, Y])` with `c` from
/// [`nu_bracket_sign`].
pub fn nu_bracket_failures(generators: &[Generator], chart: &Chart) -> Result<Vec<(Tag, Tag)>> {
    let fields = generators
        .iter()
        .map(|g| fundamental_field(&g.matrix, chart).map(|f| f.derivation))
        .collect::<Result<Vec<_>>>()?;
    let mut bad = Vec::new();
    for (a, (g, fg)) in generators.iter().zip(&fields).enumerate() {
        for (h, fh) in generators.iter().zip(&fields).skip(a) {
            let lhs = fg.bracket(fh)?;
            let br = g.matrix.superbracket(&h.matrix)?;
            let c = nu_bracket_sign(g.parity(), h.parity());
            let rhs = fundamental_field(&br, chart)?
                .derivation
                .scale(&FieldScalar::from_i64(c));
            if lhs != rhs {
                bad.push((g.tag, h.tag));
            }
        }
    }
    Ok(bad)
}

/// The chart of `IF_{k|l}`, `k = (2k₁−1, k₁−1, …)`, `l = (2l₁, l₁, …)`, whose
/// first matrix is
///
/// ```text
/// ( Z₁  𝒵₁ )
/// ( E   0  )
/// ( X₁  Ξ₁ )
/// ( Η₁  Y₁ )
/// ( 0   E  )
/// ```
///
/// with `Z₁ + Z₁ᵀ + X₁ᵀX₁ = 0`, `𝒵₁ᵀ + Ξ₁ᵀX₁ + Η₁ = 0`, `Ξ₁ᵀΞ₁ + Y₁ − Y₁ᵀ = 0`
/// solved for the entries of `Z₁` on and above the diagonal, all of `𝒵₁` and
/// the entries of `Y₁` above the diagonal.
#[derive(Clone, Debug)]
pub struct IsotropicChart {
    chart: Chart,
    gram: GramForm,
    k1: usize,
    l1: usize,
}

/// Builds the isotropic chart. `tail` lists the remaining flag steps
/// `(k_s, l_s)`, `s ≥ 2`; their index sets default to the first rows.
pub fn isotropic_chart(k1: usize, l1: usize, tail: &[(usize, usize)]) -> Result<IsotropicChart> {
    if k1 == 0 || l1 == 0 {
        return Err(Error::InvalidSize(
            "the isotropic chart needs k1 >= 1 and l1 >= 1".into(),
        ));
    }
    let m = k1 - 1;
    let mut k = vec![2 * k1 - 1, m];
    let mut l = vec![2 * l1, l1];
    for &(a, b) in tail {
        k.push(a);
        l.push(b);
    }
    let ft = FlagType::new(k, l)?;
    let c = 2 * m;
    let o = 2 * m + 1;
    let mut steps = vec![(
        (m..2 * m).map(|i| i + 1).collect::<Vec<_>>(),
        (l1..2 * l1).map(|i| i + 1).collect::<Vec<_>>(),
    )];
    for s in 2..=ft.r() {
        steps.push(((1..=ft.k()[s]).collect(), (1..=ft.l()[s]).collect()));
    }
    let index = IndexSets::new(steps)?;
    index.validate(&ft)?;

    // independent coordinates of the first step, then the tail
    let mut names: Vec<(String, Parity)> = Vec::new();
    let mut slots: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..m {
        for j in 0..i {
            names.push((format!("z1_{}_{}", i + 1, j + 1), Parity::Even));
            slots.push((1, i, j));
        }
    }
    for j in 0..m {
        names.push((format!("x1_{}", j + 1), Parity::Even));
        slots.push((1, c, j));
    }
    for j in 0..l1 {
        names.push((format!("xi1_{}", j + 1), Parity::Odd));
        slots.push((1, c, m + j));
    }
    for a in 0..l1 {
        for j in 0..m {
            names.push((format!("eta1_{}_{}", a + 1, j + 1), Parity::Odd));
            slots.push((1, o + a, j));
        }
    }
    for a in 0..l1 {
        for b in 0..=a {
            names.push((format!("y1_{}_{}", a + 1, b + 1), Parity::Even));
            slots.push((1, o + a, m + b));
        }
    }
    for s in 2..=ft.r() {
        let (rs, cs) = step_shapes(&ft, s);
        let id_rows = index.rows(&ft, s);
        for r in 0..rs.dim() {
            if id_rows.contains(&r) {
                continue;
            }
            for col in 0..cs.dim() {
                names.push(generic_name(&ft, s, r, col));
                slots.push((s, r, col));
            }
        }
    }
    let ctx = RingContext::new(&names)?;
    let coordinates: Vec<Coordinate> = slots
        .iter()
        .zip(ctx.variables())
        .map(|(&(step, row, col), var)| Coordinate {
            step,
            row,
            col,
            var,
        })
        .collect();
    let mut value: BTreeMap<(usize, usize, usize), SuperPoly> = coordinates
        .iter()
        .map(|c| ((c.step, c.row, c.col), c.var.poly()))
        .collect();
    let get = |v: &BTreeMap<(usize, usize, usize), SuperPoly>, key: (usize, usize, usize)| {
        v[&key].clone()
    };
    let half = FieldScalar::frac(1, 2);
    let mut dependent = Vec::new();
    // z_ii = −x_i²/2, z_ij = −z_ji − x_i x_j (i < j)
    for i in 0..m {
        let xi = get(&value, (1, c, i));
        let e = (&xi * &xi).scale(&-&half);
        dependent.push(Dependent {
            step: 1,
            row: i,
            col: i,
            name: format!("z1_{}_{}", i + 1, i + 1),
            expr: e.clone(),
        });
        value.insert((1, i, i), e);
    }
    for i in 0..m {
        for j in i + 1..m {
            let e =
                -&(&get(&value, (1, j, i)) + &(&get(&value, (1, c, i)) * &get(&value, (1, c, j))));
            dependent.push(Dependent {
                step: 1,
                row: i,
                col: j,
                name: format!("z1_{}_{}", i + 1, j + 1),
                expr: e.clone(),
            });
            value.insert((1, i, j), e);
        }
    }
    // ζ_ja = −ξ_a x_j − η_aj
    for j in 0..m {
        for a in 0..l1 {
            let e = -&(&(&get(&value, (1, c, m + a)) * &get(&value, (1, c, j)))
                + &get(&value, (1, o + a, j)));
            dependent.push(Dependent {
                step: 1,
                row: j,
                col: m + a,
                name: format!("zeta1_{}_{}", j + 1, a + 1),
                expr: e.clone(),
            });
            value.insert((1, j, m + a), e);
        }
    }
    // y_ab = y_ba − ξ_a ξ_b (a < b)
    for a in 0..l1 {
        for b in a + 1..l1 {
            let e = &get(&value, (1, o + b, m + a))
                - &(&get(&value, (1, c, m + a)) * &get(&value, (1, c, m + b)));
            dependent.push(Dependent {
                step: 1,
                row: o + a,
                col: m + b,
                name: format!("y1_{}_{}", a + 1, b + 1),
                expr: e.clone(),
            });
            value.insert((1, o + a, m + b), e);
        }
    }
    let steps = (1..=ft.r())
        .map(|s| assemble(&ft, &index, s, |r, col| value[&(s, r, col)].clone()))
        .collect::<Result<Vec<_>>>()?;
    let chart = Chart {
        flag: ft,
        index,
        ctx,
        steps,
        coordinates,
        dependent,
    };
    let gram = osp::gram_form(Flavor::Odd, m, l1)?;
    Ok(IsotropicChart {
        chart,
        gram,
        k1,
        l1,
    })
}

impl IsotropicChart {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn gram(&self) -> &GramForm {
        &self.gram
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn l1(&self) -> usize {
        self.l1
    }

    /// `Z^{ST} Γ Z` for the first coordinate matrix.
    pub fn residual(&self) -> Result<PolyMatrix> {
        let z = self.chart.step(1);
        let g = self.gram.matrix().lift();
        z.supertranspose()?.try_mul(&g)?.try_mul(z)
    }

    pub fn is_isotropic(&self) -> Result<bool> {
        Ok(self.residual()?.is_zero())
    }

    /// The three relation matrices evaluated on the chart (all zero).
    pub fn relations(&self) -> Result<[PolyMatrix; 3]> {
        let z = self.chart.step(1);
        let m = self.k1 - 1;
        let l1 = self.l1;
        let c = 2 * m;
        let rows = |r: std::ops::Range<usize>| r.collect::<Vec<_>>();
        let z1 = z.submatrix(&rows(0..m), &rows(0..m));
        let zeta = z.submatrix(&rows(0..m), &rows(m..m + l1));
        let x1 = z.submatrix(&[c], &rows(0..m));
        let xi = z.submatrix(&[c], &rows(m..m + l1));
        let eta = z.submatrix(&rows(2 * m + 1..2 * m + 1 + l1), &rows(0..m));
        let y = z.submatrix(&rows(2 * m + 1..2 * m + 1 + l1), &rows(m..m + l1));
        let r1 = z1
            .try_add(&z1.transpose())?
            .try_add(&x1.transpose().try_mul(&x1)?)?;
        let r2 = zeta
            .transpose()
            .try_add(&xi.transpose().try_mul(&x1)?)?
            .try_add(&eta)?;
        let r3 = xi
            .transpose()
            .try_mul(&xi)?
            .try_add(&y)?
            .try_sub(&y.transpose())?;
        Ok([r1, r2, r3])
    }
}

/// Reading of the index pattern in the constant-function conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PatternReading {
    /// `k₀ = … = k_{s+1} = m` and `l_{s+1} = … = l_r = 0` (or the mirror with
    /// `k` and `l` exchanged), as the tuples are written.
    #[default]
    Literal,
    /// `k₀ = … = k_s = m` and `l_{s+1} = … = l_r = 0` (or the mirror).
    Shifted,
}

/// True when `O(M₀) = ℂ`, false when `O(M₀)` is a Grassmann algebra on `mn`
/// generators.
pub fn constant_functions_predicate(ft: &FlagType, reading: PatternReading) -> bool {
    let (k, l, r) = (ft.k(), ft.l(), ft.r());
    let (m, n) = (ft.m(), ft.n());
    let lead = match reading {
        PatternReading::Literal => 2,
        PatternReading::Shifted => 1,
    };
    let hits = |a: &[usize], full: usize, b: &[usize]| {
        (0..r).any(|s| {
            let top = (s + lead).min(r + 1);
            s + lead <= r + 1
                && a[..top].iter().all(|&x| x == full)
                && b[s + 1..].iter().all(|&x| x == 0)
        })
    };
    !(hits(k, m, l) || hits(l, n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_type_validation() {
        assert!(FlagType::new(vec![3, 1], vec![2, 1]).is_ok());
        assert!(FlagType::new(vec![2, 2], vec![1, 0]).is_ok());
        assert!(FlagType::new(vec![2, 0], vec![1, 0]).is_err());
        assert!(FlagType::new(vec![2, 2], vec![1, 1]).is_err());
        assert!(FlagType::new(vec![1, 2], vec![1, 0]).is_err());
        assert!(FlagType::new(vec![2, 1], vec![1]).is_err());
    }

    #[test]
    fn smallest_grassmannian_chart() {
        let ft = FlagType::new(vec![2, 1], vec![0, 0]).unwrap();
        let idx = IndexSets::new(vec![(vec![2], vec![])]).unwrap();
        let c = build_chart(&ft, &idx).unwrap();
        assert_eq!(c.step(1).to_literal(), "x1_1_1; 1");
    }

    #[test]
    fn chart_identity_rows() {
        let ft = FlagType::new(vec![3, 1], vec![2, 1]).unwrap();
        let idx = IndexSets::new(vec![(vec![2], vec![2])]).unwrap();
        let c = build_chart(&ft, &idx).unwrap();
        let z = c.step(1);
        assert_eq!((z.nrows(), z.ncols()), (5, 2));
        assert_eq!(z.row(1), &[SuperPoly::one(), SuperPoly::zero()]);
        assert_eq!(z.row(4), &[SuperPoly::zero(), SuperPoly::one()]);
        let (e, o) = ft.dimension();
        assert_eq!(c.context().len(), e + o);
        assert_eq!(c.context().odd_count(), o);
        assert!(IndexSets::new(vec![(vec![2, 3], vec![2])])
            .unwrap()
            .validate(&ft)
            .is_err());
        assert!(IndexSets::new(vec![(vec![4], vec![2])])
            .unwrap()
            .validate(&ft)
            .is_err());
    }

    #[test]
    fn act_by_identity() {
        let ft = FlagType::new(vec![3, 2, 1], vec![2, 1, 1]).unwrap();
        let c = build_chart(&ft, &IndexSets::first_rows(&ft)).unwrap();
        let l = PolyMatrix::identity(BlockShape::new(3, 2));
        assert!(act(&l, &c, None).unwrap().same_matrices(&c));
    }

    #[test]
    fn euler_field_on_grassmannian() {
        // Z = (x ξ; 1 0; 0 1), H = diag(a, b | c) gives (a−b) x∂x + (a−c) ξ∂ξ
        let ft = FlagType::new(vec![2, 1], vec![1, 1]).unwrap();
        let idx = IndexSets::new(vec![(vec![2], vec![1])]).unwrap();
        let chart = build_chart(&ft, &idx).unwrap();
        let shape = BlockShape::new(2, 1);
        let h = NumMatrix::from_rows(
            shape.clone(),
            shape,
            vec![
                vec![
                    FieldScalar::from_i64(5),
                    FieldScalar::zero(),
                    FieldScalar::zero(),
                ],
                vec![
                    FieldScalar::zero(),
                    FieldScalar::from_i64(2),
                    FieldScalar::zero(),
                ],
                vec![
                    FieldScalar::zero(),
                    FieldScalar::zero(),
                    FieldScalar::from_i64(-1),
                ],
            ],
        )
        .unwrap();
        let f = fundamental_field(&h, &chart).unwrap();
        let x = chart.context().var("x1_1_1").unwrap();
        let xi = chart.context().var("xi1_1_1").unwrap();
        let expected = Derivation::new(
            chart.context(),
            Parity::Even,
            [
                (x.clone(), x.poly().scale(&FieldScalar::from_i64(3))),
                (xi.clone(), xi.poly().scale(&FieldScalar::from_i64(6))),
            ],
        )
        .unwrap();
        assert_eq!(f.derivation, expected);
        assert_eq!(
            f.derivation.to_string(),
            "3*x1_1_1*d/dx1_1_1 + 6*xi1_1_1*d/dxi1_1_1"
        );
    }

    #[test]
    fn isotropic_small_cases() {
        for (k1, l1) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let ic = isotropic_chart(k1, l1, &[]).unwrap();
            assert!(ic.is_isotropic().unwrap(), "({k1},{l1})");
            for r in ic.relations().unwrap() {
                assert!(r.is_zero());
            }
        }
        let ic = isotropic_chart(2, 1, &[]).unwrap();
        let d: Vec<String> = ic
            .chart()
            .dependent()
            .iter()
            .map(|d| format!("{} = {}", d.name, d.expr))
            .collect();
        assert!(d.contains(&"z1_1_1 = -1/2*x1_1^2".to_string()), "{d:?}");
    }

    #[test]
    fn constant_function_readings() {
        let ft = FlagType::new(vec![2, 1], vec![1, 1]).unwrap();
        assert!(constant_functions_predicate(&ft, PatternReading::Literal));
        assert!(constant_functions_predicate(&ft, PatternReading::Shifted));
        let ft = FlagType::new(vec![2, 2, 1], vec![2, 1, 0]).unwrap();
        assert!(!constant_functions_predicate(&ft, PatternReading::Shifted));
        assert!(constant_functions_predicate(&ft, PatternReading::Literal));
        // Gr_{m|n, m|0}: a point with mn odd directions
        let ft = FlagType::new(vec![2, 2], vec![1, 0]).unwrap();
        assert!(!constant_functions_predicate(&ft, PatternReading::Literal));
        let ft = FlagType::new(vec![2, 0], vec![1, 1]).unwrap();
        assert!(!constant_functions_predicate(&ft, PatternReading::Literal));
    }
    #[test]
    fn odd_fields_on_isotropic_chart() {
        let ic = isotropic_chart(2, 1, &[]).unwrap();
        let b = osp::basis(Flavor::Odd, 1, 1).unwrap();
        let field = |t: &str| {
            let g = b
                .generators()
                .iter()
                .find(|g| g.tag.to_string() == t)
                .unwrap();
            let f = fundamental_field(&g.matrix, ic.chart()).unwrap();
            assert!(f.tangency_defects.is_empty(), "{t}");
            f.derivation.to_string()
        };
        assert_eq!(
            field("G4[1]"),
            "d/dxi1_1 - x1_1*d/deta1_1_1 - xi1_1*d/dy1_1_1"
        );
        assert_eq!(field("C12[1,1]"), "-d/deta1_1_1");
        assert_eq!(field("B12[1,1]"), "d/dy1_1_1");
        assert_eq!(field("G1[1]"), "-d/dx1_1");
    }

    #[test]
    fn nu_is_a_twisted_anti_homomorphism() {
        assert_eq!(nu_bracket_sign(Parity::Odd, Parity::Odd), 1);
        assert_eq!(nu_bracket_sign(Parity::Even, Parity::Odd), -1);
        let ic = isotropic_chart(2, 1, &[]).unwrap();
        let b = osp::basis(Flavor::Odd, 1, 1).unwrap();
        assert!(nu_bracket_failures(b.generators(), ic.chart())
            .unwrap()
            .is_empty());
    }
}
