//! Orthosymplectic Lie superalgebras realised as block matrices.
//!
//! Three Gram forms are supported:
//!
//! * [`Flavor::Odd`] `(m, n)`: `osp(2m+1|2n)` with even blocks `m, m, 1` and
//!   Γ = `(0 E 0; E 0 0; 0 0 1) ⊕ (0 E; −E 0)`;
//! * [`Flavor::Even`] `(k, l)`: `osp(2k|2l)` with even blocks `k, k` and
//!   Γ = `(0 E; E 0) ⊕ (0 E; −E 0)`;
//! * [`Flavor::Primed`] `(t, n)`: Γ′ = `E_t ⊕ (0 E; −E 0)`.
//!
//! The primed algebra is the image of the standard one under the row swap `P`
//! exchanging the first two even blocks (`PΓ = Γ′`), so its generators carry the
//! same block tags. It is also the conjugate `S⁻¹·osp(Γ)·S` for the basis changes
//! returned by [`basis_change_s`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Span};
use crate::matrix::{BlockShape, Entry, NumMatrix, SuperMatrix};
use crate::ring::Parity;
use crate::scalar::FieldScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `osp(2m+1|2n)`.
    Odd,
    /// `osp(2k|2l)`.
    Even,
    /// Γ′ = `E_t ⊕ J`, first parameter is `t`.
    Primed,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Odd => "odd",
            Flavor::Even => "even",
            Flavor::Primed => "primed",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Flavor::Odd),
            "even" => Ok(Flavor::Even),
            "primed" => Ok(Flavor::Primed),
            _ => Err(Error::InvalidSize(format!(
                "unknown flavor `{s}` (odd, even, primed)"
            ))),
        }
    }
}

/// A Gram matrix together with its block layout.
#[derive(Clone, Debug, PartialEq)]
pub struct GramForm {
    flavor: Flavor,
    params: (usize, usize),
    matrix: NumMatrix,
}

impl GramForm {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn params(&self) -> (usize, usize) {
        self.params
    }

    pub fn shape(&self) -> &BlockShape {
        self.matrix.row_shape()
    }

    pub fn matrix(&self) -> &NumMatrix {
        &self.matrix
    }

    /// Even, invertible, symmetric even block, antisymmetric odd block.
    pub fn is_valid(&self) -> bool {
        let g = &self.matrix;
        let p = g.row_shape().even();
        let d = g.nrows();
        let sym = (0..d).all(|i| {
            (0..d).all(|j| {
                let same_block = (i < p) == (j < p);
                if !same_block {
                    return g.get(i, j).is_zero();
                }
                if i < p {
                    g.get(i, j) == g.get(j, i)
                } else {
                    g.get(i, j) == &-g.get(j, i)
                }
            })
        });
        let rows: Vec<Vec<FieldScalar>> = (0..d).map(|i| g.row(i).to_vec()).collect();
        sym && linalg::rank(&rows) == d
    }
}

fn check_sizes(flavor: Flavor, a: usize, b: usize, max: Option<usize>) -> Result<()> {
    if a == 0 && b == 0 && flavor != Flavor::Odd {
        return Err(Error::InvalidSize(format!(
            "{flavor} flavor needs a positive size"
        )));
    }
    if a == 0 && b == 0 {
        return Err(Error::InvalidSize("m and n cannot both be zero".into()));
    }
    if let Some(max) = max {
        if a > max || b > max {
            return Err(Error::InvalidSize(format!(
                "sizes ({a}, {b}) exceed the bound {max}"
            )));
        }
    }
    Ok(())
}

/// Even block sizes for the given flavor.
fn even_blocks(flavor: Flavor, a: usize) -> Vec<usize> {
    match flavor {
        Flavor::Odd => vec![a, a, 1],
        Flavor::Even => vec![a, a],
        Flavor::Primed if a % 2 == 1 => vec![a / 2, a / 2, 1],
        Flavor::Primed => vec![a / 2, a / 2],
    }
}

pub fn shape_of(flavor: Flavor, a: usize, b: usize) -> BlockShape {
    BlockShape::partitioned(even_blocks(flavor, a), vec![b, b])
}

pub fn gram_form(flavor: Flavor, a: usize, b: usize) -> Result<GramForm> {
    check_sizes(flavor, a, b, None)?;
    let shape = shape_of(flavor, a, b);
    let p = shape.even();
    let mut entries = vec![FieldScalar::zero(); shape.dim() * shape.dim()];
    let d = shape.dim();
    let mut put = |i: usize, j: usize, v: i64| entries[i * d + j] = FieldScalar::from_i64(v);
    match flavor {
        Flavor::Odd | Flavor::Even => {
            let h = even_blocks(flavor, a)[0];
            for i in 0..h {
                put(i, h + i, 1);
                put(h + i, i, 1);
            }
            if flavor == Flavor::Odd {
                put(2 * h, 2 * h, 1);
            }
        }
        Flavor::Primed => {
            for i in 0..p {
                put(i, i, 1);
            }
        }
    }
    for i in 0..b {
        put(p + i, p + b + i, 1);
        put(p + b + i, p + i, -1);
    }
    let matrix = NumMatrix::from_entries(shape.clone(), shape, entries)?;
    Ok(GramForm {
        flavor,
        params: (a, b),
        matrix,
    })
}

/// `M^{ST}Γ + ΓM = 0`.
pub fn is_member<T: Entry>(m: &SuperMatrix<T>, gram: &GramForm) -> Result<bool> {
    if !m.row_shape().compatible(gram.shape()) || !m.is_square() {
        return Err(Error::ShapeMismatch(
            "matrix and Gram form have different sizes".into(),
        ));
    }
    let g = gram.matrix().map(|c| T::from_scalar(c.clone()));
    let lhs = m.supertranspose()?.try_mul(&g)?.try_add(&g.try_mul(m)?)?;
    Ok(lhs.is_zero())
}

/// Block parameter a generator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    A11,
    A12,
    A21,
    G1,
    G2,
    B11,
    B12,
    B21,
    C11,
    C12,
    C21,
    C22,
    G3,
    G4,
    /// Unit matrices of a full `gl(p|q)`.
    Gl,
}

impl Block {
    pub fn parity(self) -> Parity {
        match self {
            Block::C11 | Block::C12 | Block::C21 | Block::C22 | Block::G3 | Block::G4 => {
                Parity::Odd
            }
            _ => Parity::Even,
        }
    }

    fn is_vector(self) -> bool {
        matches!(self, Block::G1 | Block::G2 | Block::G3 | Block::G4)
    }
}

/// Canonical generator tag `(block, i, j)` (0-based; displayed 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag {
    pub block: Block,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.block.is_vector() {
            write!(f, "{:?}[{}]", self.block, self.i + 1)
        } else {
            write!(f, "{:?}[{},{}]", self.block, self.i + 1, self.j + 1)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub tag: Tag,
    pub matrix: NumMatrix,
}

impl Generator {
    pub fn parity(&self) -> Parity {
        self.matrix.parity().expect("generators are homogeneous")
    }
}

/// A list of homogeneous numeric matrices, optionally tied to a Gram form.
#[derive(Clone, Debug)]
pub struct Basis {
    shape: BlockShape,
    gram: Option<GramForm>,
    generators: Vec<Generator>,
    span: Span,
}

impl Basis {
    pub fn new(shape: BlockShape, gram: Option<GramForm>, generators: Vec<Generator>) -> Self {
        let vectors: Vec<Vec<FieldScalar>> =
            generators.iter().map(|g| g.matrix.to_vector()).collect();
        let span = if vectors.is_empty() {
            Span::new(&[vec![FieldScalar::zero(); shape.dim() * shape.dim()]])
        } else {
            Span::new(&vectors)
        };
        Basis {
            shape,
            gram,
            generators,
            span,
        }
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn gram(&self) -> Option<&GramForm> {
        self.gram.as_ref()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn count(&self, p: Parity) -> usize {
        self.generators.iter().filter(|g| g.parity() == p).count()
    }

    pub fn is_independent(&self) -> bool {
        self.is_empty() || self.span.is_independent()
    }

    pub fn position(&self, tag: &Tag) -> Option<usize> {
        self.generators.iter().position(|g| &g.tag == tag)
    }

    /// Coordinates of `m` in this basis, or `None` outside the span.
    pub fn coordinates(&self, m: &NumMatrix) -> Option<Vec<FieldScalar>> {
        if self.is_empty() {
            return m.is_zero().then(Vec::new);
        }
        self.span.coordinates(&m.to_vector())
    }

    pub fn contains(&self, m: &NumMatrix) -> bool {
        self.coordinates(m).is_some()
    }

    /// The generators whose tags satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(&Tag) -> bool) -> Basis {
        let gens = self
            .generators
            .iter()
            .filter(|g| keep(&g.tag))
            .cloned()
            .collect();
        Basis::new(self.shape.clone(), self.gram.clone(), gens)
    }

    /// Applies `f` to every generator matrix.
    pub fn map_matrices(
        &self,
        gram: Option<GramForm>,
        f: impl Fn(&NumMatrix) -> Result<NumMatrix>,
    ) -> Result<Basis> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    tag: g.tag,
                    matrix: f(&g.matrix)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let shape = gens
            .first()
            .map_or(self.shape.clone(), |g| g.matrix.row_shape().clone());
        Ok(Basis::new(shape, gram, gens))
    }
}

struct Builder {
    shape: BlockShape,
    gens: Vec<Generator>,
}

impl Builder {
    fn push(&mut self, block: Block, i: usize, j: usize, entries: &[(usize, usize, i64)]) {
        let d = self.shape.dim();
        let mut v = vec![FieldScalar::zero(); d * d];
        for &(r, c, x) in entries {
            v[r * d + c] += &FieldScalar::from_i64(x);
        }
        let matrix = NumMatrix::from_entries(self.shape.clone(), self.shape.clone(), v)
            .expect("consistent size")
            .with_parity(block.parity())
            .expect("generator parity follows its block");
        self.gens.push(Generator {
            tag: Tag { block, i, j },
            matrix,
        });
    }
}

/// Generators of the standard odd (`with_center = true`) or even layout.
fn standard_generators(
    shape: &BlockShape,
    m: usize,
    n: usize,
    with_center: bool,
) -> Vec<Generator> {
    let c = 2 * m;
    let o = 2 * m + usize::from(with_center);
    let mut b = Builder {
        shape: shape.clone(),
        gens: Vec::new(),
    };
    for i in 0..m {
        for j in 0..m {
            b.push(Block::A11, i, j, &[(i, j, 1), (m + j, m + i, -1)]);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            b.push(Block::A12, i, j, &[(i, m + j, 1), (j, m + i, -1)]);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            b.push(Block::A21, i, j, &[(m + i, j, 1), (m + j, i, -1)]);
        }
    }
    if with_center {
        for i in 0..m {
            b.push(Block::G1, i, 0, &[(i, c, 1), (c, m + i, -1)]);
        }
        for i in 0..m {
            b.push(Block::G2, i, 0, &[(m + i, c, 1), (c, i, -1)]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            b.push(
                Block::B11,
                i,
                j,
                &[(o + i, o + j, 1), (o + n + j, o + n + i, -1)],
            );
        }
    }
    for i in 0..n {
        for j in i..n {
            b.push(
                Block::B12,
                i,
                j,
                &[(o + i, o + n + j, 1), (o + j, o + n + i, 1)],
            );
        }
    }
    for i in 0..n {
        for j in i..n {
            b.push(
                Block::B21,
                i,
                j,
                &[(o + n + i, o + j, 1), (o + n + j, o + i, 1)],
            );
        }
    }
    for i in 0..m {
        for j in 0..n {
            b.push(Block::C11, i, j, &[(i, o + j, 1), (o + n + j, m + i, 1)]);
        }
    }
    for i in 0..m {
        for j in 0..n {
            b.push(Block::C12, i, j, &[(i, o + n + j, 1), (o + j, m + i, -1)]);
        }
    }
    for i in 0..m {
        for j in 0..n {
            b.push(Block::C21, i, j, &[(m + i, o + j, 1), (o + n + j, i, 1)]);
        }
    }
    for i in 0..m {
        for j in 0..n {
            b.push(Block::C22, i, j, &[(m + i, o + n + j, 1), (o + j, i, -1)]);
        }
    }
    if with_center {
        for j in 0..n {
            b.push(Block::G3, j, 0, &[(c, o + j, 1), (o + n + j, c, 1)]);
        }
        for j in 0..n {
            b.push(Block::G4, j, 0, &[(c, o + n + j, 1), (o + j, c, -1)]);
        }
    }
    // B12/B21 diagonal entries were doubled by the symmetric push
    for g in b.gens.iter_mut() {
        if matches!(g.tag.block, Block::B12 | Block::B21) && g.tag.i == g.tag.j {
            g.matrix = g.matrix.scale(&FieldScalar::frac(1, 2));
        }
    }
    b.gens
}

/// Row swap of the first two even blocks; `PΓ = Γ′`.
pub fn row_swap(shape: &BlockShape) -> NumMatrix {
    let h = shape.even_blocks()[0];
    let mut p = NumMatrix::identity(shape.clone());
    for i in 0..h {
        p.set(i, i, FieldScalar::zero());
        p.set(h + i, h + i, FieldScalar::zero());
        p.set(i, h + i, FieldScalar::one());
        p.set(h + i, i, FieldScalar::one());
    }
    p
}

/// Canonical basis of `osp(Γ)` for the given flavor.
pub fn basis(flavor: Flavor, a: usize, b: usize) -> Result<Basis> {
    let gram = gram_form(flavor, a, b)?;
    let shape = gram.shape().clone();
    let gens = match flavor {
        Flavor::Odd => standard_generators(&shape, a, b, true),
        Flavor::Even => standard_generators(&shape, a, b, false),
        Flavor::Primed => {
            let odd = a % 2 == 1;
            let std = standard_generators(&shape, a / 2, b, odd);
            let p = row_swap(&shape);
            std.into_iter()
                .map(|g| Generator {
                    tag: g.tag,
                    matrix: p.try_mul(&g.matrix).expect("same shape"),
                })
                .collect()
        }
    };
    Ok(Basis::new(shape, Some(gram), gens))
}

/// Dimension formula `(even, odd)`.
pub fn dimension(flavor: Flavor, a: usize, b: usize) -> (usize, usize) {
    let (m, t_odd) = match flavor {
        Flavor::Odd => (a, true),
        Flavor::Even => (a, false),
        Flavor::Primed => (a / 2, a % 2 == 1),
    };
    let n = b;
    if t_odd {
        (m * (2 * m + 1) + n * (2 * n + 1), 2 * n * (2 * m + 1))
    } else {
        (2 * m * m - m + n * (2 * n + 1), 4 * m * n)
    }
}

/// Full `gl(p|q)` with unit-matrix generators (a control for [`center`]).
pub fn gl_basis(p: usize, q: usize) -> Basis {
    let shape = BlockShape::new(p, q);
    let d = shape.dim();
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            gens.push(Generator {
                tag: Tag {
                    block: Block::Gl,
                    i,
                    j,
                },
                matrix: NumMatrix::unit(&shape, i, j, FieldScalar::one()),
            });
        }
    }
    Basis::new(shape, None, gens)
}

/// Sparse structure constants: `[e_p, e_q] = Σ_r c_{pq}^r e_r`.
#[derive(Clone, Debug, Default)]
pub struct StructureConstants {
    parities: Vec<Parity>,
    table: BTreeMap<(usize, usize), Vec<(usize, FieldScalar)>>,
}

type Sparse = BTreeMap<usize, FieldScalar>;

impl StructureConstants {
    pub fn len(&self) -> usize {
        self.parities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parities.is_empty()
    }

    /// All nonzero `(p, q, r, c)` with `p ≤ q`.
    pub fn triples(&self) -> Vec<(usize, usize, usize, FieldScalar)> {
        self.table
            .iter()
            .filter(|((p, q), _)| p <= q)
            .flat_map(|(&(p, q), v)| v.iter().map(move |(r, c)| (p, q, *r, c.clone())))
            .collect()
    }

    fn pair(&self, p: usize, q: usize) -> &[(usize, FieldScalar)] {
        self.table.get(&(p, q)).map_or(&[], Vec::as_slice)
    }

    fn bracket_basis_with(&self, p: usize, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&q, c) in v {
            for (r, d) in self.pair(p, q) {
                let e = out.entry(*r).or_insert_with(FieldScalar::zero);
                *e += &(c * d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn bracket(&self, u: &Sparse, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&p, c) in u {
            for (r, d) in self.bracket_basis_with(p, v) {
                let e = out.entry(r).or_insert_with(FieldScalar::zero);
                *e += &(c * &d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `[x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]` on basis triples.
    pub fn jacobi_holds(&self, p: usize, q: usize, r: usize) -> bool {
        let e = |i: usize| Sparse::from([(i, FieldScalar::one())]);
        let lhs = self.bracket(&e(p), &self.bracket(&e(q), &e(r)));
        let a = self.bracket(&self.bracket(&e(p), &e(q)), &e(r));
        let mut b = self.bracket(&e(q), &self.bracket(&e(p), &e(r)));
        if self.parities[p].koszul(self.parities[q]) < 0 {
            b.values_mut().for_each(|c| *c = -&*c);
        }
        let mut rhs = a;
        for (k, c) in b {
            let e = rhs.entry(k).or_insert_with(FieldScalar::zero);
            *e += &c;
        }
        rhs.retain(|_, c| !c.is_zero());
        lhs == rhs
    }

    /// Checks super-Jacobi on every ordered triple; returns the first failure.
    pub fn check_jacobi(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let n = self.len();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if !self.jacobi_holds(p, q, r) {
                        return Err((p, q, r));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Result of [`closure_check`].
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub pairs_checked: usize,
    pub constants: StructureConstants,
}

/// Re-expands every bracket of generators in the basis.
pub fn closure_check(basis: &Basis) -> Result<ClosureReport> {
    let gens = basis.generators();
    let mut constants = StructureConstants {
        parities: gens.iter().map(Generator::parity).collect(),
        table: BTreeMap::new(),
    };
    let mut pairs = 0;
    for p in 0..gens.len() {
        for q in p..gens.len() {
            let br = gens[p].matrix.superbracket(&gens[q].matrix)?;
            let expected = gens[p].parity() + gens[q].parity();
            if !br.is_zero() && br.parity() != Some(expected) {
                return Err(Error::NotClosed(format!(
                    "[{}, {}] has the wrong parity",
                    gens[p].tag, gens[q].tag
                )));
            }
            let coords = basis
                .coordinates(&br)
                .ok_or_else(|| Error::NotClosed(format!("[{}, {}]", gens[p].tag, gens[q].tag)))?;
            let entries: Vec<(usize, FieldScalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            pairs += 1;
            if entries.is_empty() {
                continue;
            }
            // [e_q, e_p] = −(−1)^{|p||q|} [e_p, e_q]
            let sign = -gens[p].parity().koszul(gens[q].parity());
            let swapped = entries
                .iter()
                .map(|(r, c)| (*r, if sign < 0 { -c } else { c.clone() }))
                .collect();
            constants.table.insert((p, q), entries);
            if p != q {
                constants.table.insert((q, p), swapped);
            }
        }
    }
    Ok(ClosureReport {
        pairs_checked: pairs,
        constants,
    })
}

/// A basis of the center: all `Z` in the span with `[Z, X] = 0` for every
/// generator `X` (brackets extended linearly over mixed parity).
pub fn center(basis: &Basis) -> Result<Vec<NumMatrix>> {
    let gens = basis.generators();
    let n = gens.len();
    let d = basis.shape().dim();
    // rows: one per (generator X_i, matrix entry); columns: unknown coefficients z_k
    let mut columns: Vec<Vec<FieldScalar>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut col = Vec::with_capacity(n * d * d);
        for x in gens {
            col.extend(gens[k].matrix.superbracket(&x.matrix)?.to_vector());
        }
        columns.push(col);
    }
    let nrows = columns.first().map_or(0, Vec::len);
    let rows: Vec<Vec<FieldScalar>> = (0..nrows)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ns = linalg::nullspace(&rows, n);
    ns.into_iter()
        .map(|z| {
            let mut acc = vec![FieldScalar::zero(); d * d];
            for (c, g) in z.iter().zip(gens) {
                if c.is_zero() {
                    continue;
                }
                for (a, e) in acc.iter_mut().zip(g.matrix.entries()) {
                    *a += &(c * e);
                }
            }
            NumMatrix::from_vector(basis.shape().clone(), basis.shape().clone(), acc)
        })
        .collect()
}

/// The basis change `S` with `SᵀΓS = Γ′` for `osp(2k₁−1|2l₁)` ([`Flavor::Odd`],
/// `m = k₁−1`) or `osp(2k₁|2l₁)` ([`Flavor::Even`]).
pub fn basis_change_s(flavor: Flavor, k1: usize, l1: usize) -> Result<NumMatrix> {
    let (h, a) = match flavor {
        Flavor::Odd if k1 >= 1 => (k1 - 1, k1 - 1),
        Flavor::Even if k1 >= 1 => (k1, k1),
        Flavor::Primed => {
            return Err(Error::InvalidSize(
                "S is defined for the odd and even flavors".into(),
            ))
        }
        _ => return Err(Error::InvalidSize("k1 must be at least 1".into())),
    };
    let shape = shape_of(flavor, a, l1);
    let mut s = NumMatrix::identity(shape);
    let r = FieldScalar::frac(1, 2) * FieldScalar::sqrt2();
    let ir = &r * &FieldScalar::i();
    for i in 0..h {
        s.set(i, i, r.clone());
        s.set(i, h + i, ir.clone());
        s.set(h + i, i, r.clone());
        s.set(h + i, h + i, -&ir);
    }
    Ok(s)
}

/// The even-flavor basis change with its even columns reordered so that the
/// embedding `j` carries the parabolic `𝔭` of `osp(2k₁−1|2l₁)` into the
/// parabolic `𝔭¹` of `osp(2k₁|2l₁)`. Still satisfies `SᵀΓS = Γ′`.
pub fn aligned_basis_change(k1: usize, l1: usize) -> Result<NumMatrix> {
    let s = basis_change_s(Flavor::Even, k1, l1)?;
    let m = k1 - 1;
    let mut order = vec![k1];
    order.extend(1..=m);
    order.extend(k1 + 1..k1 + 1 + m);
    order.push(0);
    order.extend(2 * k1..s.ncols());
    let cols: Vec<usize> = order;
    let rows: Vec<usize> = (0..s.nrows()).collect();
    let mut out = s.submatrix(&rows, &cols);
    out = NumMatrix::from_entries(
        s.row_shape().clone(),
        s.col_shape().clone(),
        out.entries().to_vec(),
    )?;
    Ok(out)
}

/// `X ↦ S⁻¹XS`.
pub fn conjugate<T: Entry>(x: &SuperMatrix<T>, s: &NumMatrix) -> Result<SuperMatrix<T>> {
    let sinv = s.invert()?;
    let lift = |m: &NumMatrix| m.map(|c| T::from_scalar(c.clone()));
    lift(&sinv).try_mul(x)?.try_mul(&lift(s))
}

/// `X ↦ SXS⁻¹`.
pub fn conjugate_back<T: Entry>(x: &SuperMatrix<T>, s: &NumMatrix) -> Result<SuperMatrix<T>> {
    let sinv = s.invert()?;
    let lift = |m: &NumMatrix| m.map(|c| T::from_scalar(c.clone()));
    lift(s).try_mul(x)?.try_mul(&lift(&sinv))
}

/// Differential of `j : X ↦ diag(1, X)`: sends a primed `osp(2k₁−1|2l₁)`
/// element to `diag(0, X)` in primed `osp(2k₁|2l₁)`.
pub fn embed_j<T: Entry>(x: &SuperMatrix<T>) -> Result<SuperMatrix<T>> {
    let shape = x.row_shape();
    let t = shape.even();
    if t % 2 == 0 || shape.odd() % 2 == 1 || !x.is_square() {
        return Err(Error::NotMember(format!(
            "primed osp({}|{}) source algebra",
            t,
            shape.odd()
        )));
    }
    let src = gram_form(Flavor::Primed, t, shape.odd() / 2)?;
    if !is_member(x, &src)? {
        return Err(Error::NotMember(format!(
            "primed osp({}|{}) source algebra",
            t,
            shape.odd()
        )));
    }
    let target = shape_of(Flavor::Primed, t + 1, shape.odd() / 2);
    let d = target.dim();
    let mut entries = vec![T::zero(); d * d];
    for i in 0..x.nrows() {
        for j in 0..x.ncols() {
            entries[(i + 1) * d + (j + 1)] = x.get(i, j).clone();
        }
    }
    SuperMatrix::from_entries(target.clone(), target, entries)
}

/// Which parabolic subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parabolic {
    /// `𝔭 ⊂ osp(2k₁−1|2l₁)`.
    P,
    /// `𝔭¹ ⊂ osp(2k₁|2l₁)`.
    P1,
}

/// Parabolic subalgebra in the standard layout: the stabilizer of the span of
/// the second even block and the second odd block.
pub fn parabolic_basis(which: Parabolic, k1: usize, l1: usize) -> Result<Basis> {
    if k1 == 0 || l1 == 0 {
        return Err(Error::InvalidSize(
            "parabolic subalgebras need k1 >= 1 and l1 >= 1".into(),
        ));
    }
    let ambient = match which {
        Parabolic::P => basis(Flavor::Odd, k1 - 1, l1)?,
        Parabolic::P1 => basis(Flavor::Even, k1, l1)?,
    };
    Ok(ambient.restrict(|t| {
        matches!(
            t.block,
            Block::A11
                | Block::A21
                | Block::G2
                | Block::G3
                | Block::B11
                | Block::B21
                | Block::C11
                | Block::C21
                | Block::C22
        )
    }))
}

/// The parabolic subalgebra moved into the primed layout by conjugation with
/// the given basis change.
pub fn primed_parabolic(which: Parabolic, k1: usize, l1: usize, s: &NumMatrix) -> Result<Basis> {
    let std = parabolic_basis(which, k1, l1)?;
    let t = match which {
        Parabolic::P => 2 * k1 - 1,
        Parabolic::P1 => 2 * k1,
    };
    let gram = gram_form(Flavor::Primed, t, l1)?;
    std.map_matrices(Some(gram), |m| conjugate(m, s))
}

/// Checks `dj(𝔭) ⊆ 𝔭¹` where both parabolics are moved to the primed layout
/// with `S` (odd flavor) and `s1` (even flavor). Returns the tags of `𝔭`
/// generators whose image leaves `𝔭¹`.
pub fn dj_parabolic_failures(k1: usize, l1: usize, s1: &NumMatrix) -> Result<Vec<Tag>> {
    let s = basis_change_s(Flavor::Odd, k1, l1)?;
    let p = primed_parabolic(Parabolic::P, k1, l1, &s)?;
    let p1 = primed_parabolic(Parabolic::P1, k1, l1, s1)?;
    let mut out = Vec::new();
    for g in p.generators() {
        if !p1.contains(&embed_j(&g.matrix)?) {
            out.push(g.tag);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_examples() {
        let g = gram_form(Flavor::Odd, 1, 1).unwrap();
        assert_eq!(
            g.matrix().to_literal(),
            "0, 1, 0, 0, 0; 1, 0, 0, 0, 0; 0, 0, 1, 0, 0; 0, 0, 0, 0, 1; 0, 0, 0, -1, 0"
        );
        let g = gram_form(Flavor::Even, 1, 1).unwrap();
        assert_eq!(
            g.matrix().to_literal(),
            "0, 1, 0, 0; 1, 0, 0, 0; 0, 0, 0, 1; 0, 0, -1, 0"
        );
        let g = gram_form(Flavor::Primed, 2, 1).unwrap();
        assert_eq!(
            g.matrix().to_literal(),
            "1, 0, 0, 0; 0, 1, 0, 0; 0, 0, 0, 1; 0, 0, -1, 0"
        );
        for f in [Flavor::Odd, Flavor::Even, Flavor::Primed] {
            assert!(gram_form(f, 2, 1).unwrap().is_valid());
        }
        assert!(gram_form(Flavor::Odd, 0, 0).is_err());
    }

    #[test]
    fn membership_examples() {
        let g = gram_form(Flavor::Odd, 1, 1).unwrap();
        let shape = g.shape().clone();
        assert!(is_member(&NumMatrix::zeros(shape.clone(), shape.clone()), &g).unwrap());
        let h = NumMatrix::unit(&shape, 0, 0, FieldScalar::one())
            .try_sub(&NumMatrix::unit(&shape, 1, 1, FieldScalar::one()))
            .unwrap();
        assert!(is_member(&h, &g).unwrap());
        assert!(!is_member(&NumMatrix::unit(&shape, 0, 1, FieldScalar::one()), &g).unwrap());
    }

    #[test]
    fn basis_counts() {
        let b = basis(Flavor::Odd, 1, 1).unwrap();
        assert_eq!((b.count(Parity::Even), b.count(Parity::Odd)), (6, 6));
        let b = basis(Flavor::Odd, 2, 1).unwrap();
        assert_eq!((b.count(Parity::Even), b.count(Parity::Odd)), (13, 10));
        let b = basis(Flavor::Even, 1, 1).unwrap();
        assert_eq!((b.count(Parity::Even), b.count(Parity::Odd)), (4, 4));
        assert!(b.is_independent());
    }

    #[test]
    fn small_closure_and_center() {
        let b = basis(Flavor::Odd, 1, 1).unwrap();
        let report = closure_check(&b).unwrap();
        assert_eq!(report.pairs_checked, 78);
        assert!(report.constants.check_jacobi().is_ok());
        assert!(center(&b).unwrap().is_empty());
        let gl = gl_basis(1, 1);
        let z = center(&gl).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].to_literal(), "1, 0; 0, 1");
    }

    #[test]
    fn s_matrix_small() {
        let s = basis_change_s(Flavor::Even, 1, 1).unwrap();
        assert_eq!(
            s.to_literal(),
            "1/2*r2, 1/2*i*r2, 0, 0; 1/2*r2, -1/2*i*r2, 0, 0; 0, 0, 1, 0; 0, 0, 0, 1"
        );
        let g = gram_form(Flavor::Even, 1, 1).unwrap();
        let gp = gram_form(Flavor::Primed, 2, 1).unwrap();
        let lhs = s
            .supertranspose()
            .unwrap()
            .try_mul(g.matrix())
            .unwrap()
            .try_mul(&s)
            .unwrap();
        assert_eq!(&lhs, gp.matrix());
    }
}
