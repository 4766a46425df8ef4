//! Named verification suites. Each returns a [`SuiteReport`]; checks that fail
//! or raise errors are recorded as failures, while invalid sizes are returned
//! as errors before anything runs.

use std::time::Instant;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::flag::{self, Derivation, PolyMatrix};
use crate::linalg;
use crate::matrix::{BlockShape, NumMatrix, SuperMatrix};
use crate::osp::{self, Basis, Flavor, Parabolic};
use crate::report::SuiteReport;
use crate::ring::{Parity, RingContext, SuperPoly};
use crate::scalar::FieldScalar;
use crate::weights;

/// Super-Jacobi is checked on all basis triples up to this size.
pub const JACOBI_MAX: usize = 2;
pub const DEFAULT_MAX_SIZE: usize = 3;

pub const SUITES: [&str; 5] = [
    "osp_defining",
    "lemma_fields",
    "isomorphism",
    "imP_witness",
    "bwb",
];

fn timed(name: &str, body: impl FnOnce(&mut SuiteReport)) -> SuiteReport {
    let start = Instant::now();
    let mut r = SuiteReport::new(name);
    body(&mut r);
    r.duration = start.elapsed();
    r
}

fn list<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn bound(max: usize, sizes: &[usize]) -> Result<()> {
    if sizes.iter().any(|&s| s > max) {
        return Err(Error::InvalidSize(format!(
            "sizes {sizes:?} exceed the bound {max}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// osp_defining

/// Basis generation, membership, closure, super-Jacobi (up to [`JACOBI_MAX`])
/// and center for `osp(2m+1|2n)`.
pub fn suite_osp_defining(m: usize, n: usize) -> Result<SuiteReport> {
    let b = osp::basis(Flavor::Odd, m, n)?;
    let tag = format!("({m},{n})");
    Ok(timed("osp_defining", |r| {
        let want = osp::dimension(Flavor::Odd, m, n);
        let got = (b.count(Parity::Even), b.count(Parity::Odd));
        r.check(
            format!("{tag}/counts"),
            "dim osp(2m+1|2n) = (m(2m+1)+n(2n+1) | 2n(2m+1))",
            got == want && b.is_independent(),
            format!(
                "{} even + {} odd generators, expected {} + {}",
                got.0, got.1, want.0, want.1
            ),
        );
        let gram = b.gram().expect("osp basis has a Gram form");
        let bad: Vec<String> = b
            .generators()
            .iter()
            .filter(|g| !osp::is_member(&g.matrix, gram).unwrap_or(false))
            .map(|g| g.tag.to_string())
            .collect();
        r.check(
            format!("{tag}/membership"),
            "M^ST Γ + Γ M = 0",
            bad.is_empty(),
            list(bad),
        );
        match osp::closure_check(&b) {
            Ok(c) => {
                r.check(
                    format!("{tag}/closure"),
                    "[X, Y] ∈ osp",
                    true,
                    format!("{} pairs", c.pairs_checked),
                );
                if m <= JACOBI_MAX && n <= JACOBI_MAX {
                    let witness = match c.constants.check_jacobi() {
                        Ok(()) => format!("{} basis triples", b.len().pow(3)),
                        Err((p, q, s)) => {
                            let g = b.generators();
                            format!("fails on ({}, {}, {})", g[p].tag, g[q].tag, g[s].tag)
                        }
                    };
                    r.check(
                        format!("{tag}/jacobi"),
                        "super-Jacobi identity",
                        !witness.starts_with("fails"),
                        witness,
                    );
                }
            }
            Err(e) => {
                r.error(format!("{tag}/closure"), "[X, Y] ∈ osp", &e);
            }
        }
        match osp::center(&b) {
            Ok(z) => r.check(
                format!("{tag}/center"),
                "center of osp is trivial",
                z.is_empty(),
                if z.is_empty() {
                    "{0}".to_string()
                } else {
                    list(z.iter().map(NumMatrix::to_literal))
                },
            ),
            Err(e) => r.error(format!("{tag}/center"), "center of osp is trivial", &e),
        };
    }))
}

// ---------------------------------------------------------------------------
// lemma_fields

/// Default one-step tail `(k₁−1, l₁−1)` (empty when both vanish).
pub fn default_tail(k1: usize, l1: usize) -> Vec<(usize, usize)> {
    if k1 + l1 > 2 {
        vec![(k1 - 1, l1 - 1)]
    } else {
        Vec::new()
    }
}

fn unit(shape: &BlockShape, terms: &[(usize, usize, i64)]) -> Result<NumMatrix> {
    let mut m = NumMatrix::zeros(shape.clone(), shape.clone());
    for &(i, j, c) in terms {
        m = m.try_add(&NumMatrix::unit(shape, i, j, FieldScalar::from_i64(c)))?;
    }
    Ok(m)
}

/// `γ(τ) = exp(τX)` generator behind `h_i` (1-based `i`), in the standard
/// layout of `osp(2k₁−1|2l₁)`.
pub fn h_generator(k1: usize, l1: usize, i: usize) -> Result<NumMatrix> {
    let shape = osp::shape_of(Flavor::Odd, k1 - 1, l1);
    let c = 2 * k1 - 2;
    unit(&shape, &[(c + i, c, -1), (c, c + l1 + i, 1)])
}

/// Generator whose field is `∂/∂η¹_{ab}` (1-based `a ≤ l₁`, `b ≤ k₁−1`).
pub fn eta_generator(k1: usize, l1: usize, a: usize, b: usize) -> Result<NumMatrix> {
    let m = k1 - 1;
    let shape = osp::shape_of(Flavor::Odd, m, l1);
    let o = 2 * m + 1;
    unit(
        &shape,
        &[(o + a - 1, m + b - 1, 1), (b - 1, o + l1 + a - 1, -1)],
    )
}

/// `h_i = ∂/∂ξ¹_i − Σ_j x¹_j ∂/∂η¹_{ij} − Σ_{j≤i} ξ¹_j ∂/∂y¹_{ij}` written
/// directly in the chart coordinates.
pub fn expected_h(chart: &flag::Chart, k1: usize, i: usize) -> Result<Derivation> {
    let ctx = chart.context();
    let v = |n: String| ctx.var(&n);
    let mut terms = vec![(v(format!("xi1_{i}"))?, SuperPoly::one())];
    for j in 1..k1 {
        terms.push((
            v(format!("eta1_{i}_{j}"))?,
            v(format!("x1_{j}"))?
                .poly()
                .scale(&FieldScalar::from_i64(-1)),
        ));
    }
    for j in 1..=i {
        terms.push((
            v(format!("y1_{i}_{j}"))?,
            v(format!("xi1_{j}"))?
                .poly()
                .scale(&FieldScalar::from_i64(-1)),
        ));
    }
    Derivation::new(ctx, Parity::Odd, terms)
}

/// Fundamental fields of the `h_i` and `∂/∂η¹_{ab}` generators against the
/// displayed formulas, plus isotropy of the chart and tangency of every
/// `osp(2k₁−1|2l₁)` field.
pub fn suite_lemma_fields(k1: usize, l1: usize, tail: &[(usize, usize)]) -> Result<SuiteReport> {
    let ic = flag::isotropic_chart(k1, l1, tail)?;
    let chart = ic.chart();
    let tag = format!("({k1},{l1})");
    Ok(timed("lemma_fields", |r| {
        for i in 1..=l1 {
            let id = format!("{tag}/h{i}");
            let anchor = "h_i = ∂/∂ξ_i − Σ x_j ∂/∂η_ij − Σ_{j≤i} ξ_j ∂/∂y_ij is fundamental";
            let run = || -> Result<(String, String, bool)> {
                let got = flag::fundamental_field(&h_generator(k1, l1, i)?, chart)?;
                let want = expected_h(chart, k1, i)?;
                Ok((
                    got.derivation.to_string(),
                    want.to_string(),
                    got.derivation == want && got.tangency_defects.is_empty(),
                ))
            };
            match run() {
                Ok((got, want, ok)) => r.check(
                    id,
                    anchor,
                    ok,
                    if ok {
                        got
                    } else {
                        format!("got {got}\nexpected {want}")
                    },
                ),
                Err(e) => r.error(id, anchor, &e),
            };
        }
        for a in 1..=l1 {
            for b in 1..k1 {
                let id = format!("{tag}/eta{a}_{b}");
                let anchor = "∂/∂η_ab is fundamental";
                let run = || -> Result<(String, bool)> {
                    let f = flag::fundamental_field(&eta_generator(k1, l1, a, b)?, chart)?;
                    let var = chart.context().var(&format!("eta1_{a}_{b}"))?;
                    let want =
                        Derivation::new(chart.context(), Parity::Odd, [(var, SuperPoly::one())])?;
                    let single = f.derivation.terms().count() == 1;
                    Ok((
                        f.derivation.to_string(),
                        f.derivation == want && single && f.tangency_defects.is_empty(),
                    ))
                };
                match run() {
                    Ok((got, ok)) => r.check(id, anchor, ok, got),
                    Err(e) => r.error(id, anchor, &e),
                };
            }
        }
        let anchor = "Z^ST Γ Z = 0 on the chart";
        match ic.residual() {
            Ok(res) => r.check(
                format!("{tag}/isotropy"),
                anchor,
                res.is_zero(),
                if res.is_zero() {
                    String::new()
                } else {
                    res.to_literal()
                },
            ),
            Err(e) => r.error(format!("{tag}/isotropy"), anchor, &e),
        };
        let anchor = "fundamental fields annihilate the defining relations";
        let run = || -> Result<Vec<String>> {
            let b = osp::basis(Flavor::Odd, k1 - 1, l1)?;
            let mut bad = Vec::new();
            for g in b.generators() {
                let f = flag::fundamental_field(&g.matrix, chart)?;
                if !f.tangency_defects.is_empty() {
                    bad.push(format!("{}: {}", g.tag, f.tangency_defects.join(" ")));
                }
            }
            Ok(bad)
        };
        match run() {
            Ok(bad) => r.check(format!("{tag}/tangency"), anchor, bad.is_empty(), list(bad)),
            Err(e) => r.error(format!("{tag}/tangency"), anchor, &e),
        };
    }))
}

// ---------------------------------------------------------------------------
// isomorphism

/// Image of primed `osp(2k₁−1|2l₁)` under `dj` inside primed `osp(2k₁|2l₁)`.
pub fn j_image(k1: usize, l1: usize) -> Result<Basis> {
    osp::basis(Flavor::Primed, 2 * k1 - 1, l1)?.map_matrices(None, |x| osp::embed_j(x))
}

fn gram_change_holds(s: &NumMatrix, g: &NumMatrix, gp: &NumMatrix) -> Result<bool> {
    Ok(&s.supertranspose()?.try_mul(g)?.try_mul(s)? == gp)
}

/// `S⁻¹ osp(Γ) S` spans exactly `osp(Γ′)`.
fn conjugation_is_onto(src: &Basis, target: &Basis, s: &NumMatrix) -> Result<bool> {
    let gram = target.gram().expect("target has a Gram form");
    let img = src.map_matrices(Some(gram.clone()), |x| osp::conjugate(x, s))?;
    for g in img.generators() {
        if !osp::is_member(&g.matrix, gram)? || !target.contains(&g.matrix) {
            return Ok(false);
        }
    }
    Ok(img.is_independent() && img.len() == target.len())
}

pub fn suite_isomorphism(k1: usize, l1: usize) -> Result<SuiteReport> {
    if k1 == 0 || l1 == 0 {
        return Err(Error::InvalidSize("k1 and l1 must be at least 1".into()));
    }
    let tag = format!("({k1},{l1})");
    Ok(timed("isomorphism", |r| {
        let mut run = |id: &str, anchor: &str, f: &dyn Fn() -> Result<(bool, String)>| match f() {
            Ok((ok, w)) => r.check(format!("{tag}/{id}"), anchor, ok, w),
            Err(e) => r.error(format!("{tag}/{id}"), anchor, &e),
        };
        run(
            "gram-odd",
            "S^ST Γ S = Γ′ for osp(2k₁−1|2l₁)",
            &|| {
                let s = osp::basis_change_s(Flavor::Odd, k1, l1)?;
                let g = osp::gram_form(Flavor::Odd, k1 - 1, l1)?;
                let gp = osp::gram_form(Flavor::Primed, 2 * k1 - 1, l1)?;
                Ok((
                    gram_change_holds(&s, g.matrix(), gp.matrix())?,
                    s.to_literal(),
                ))
            },
        );
        run(
            "gram-even",
            "S^ST Γ S = Γ′ for osp(2k₁|2l₁)",
            &|| {
                let g = osp::gram_form(Flavor::Even, k1, l1)?;
                let gp = osp::gram_form(Flavor::Primed, 2 * k1, l1)?;
                let s = osp::basis_change_s(Flavor::Even, k1, l1)?;
                let s1 = osp::aligned_basis_change(k1, l1)?;
                let ok = gram_change_holds(&s, g.matrix(), gp.matrix())?
                    && gram_change_holds(&s1, g.matrix(), gp.matrix())?;
                Ok((
                    ok,
                    format!("S = {}; S¹ = {}", s.to_literal(), s1.to_literal()),
                ))
            },
        );
        run(
            "conjugation",
            "X ↦ S⁻¹XS maps osp(Γ) onto osp(Γ′)",
            &|| {
                let odd = conjugation_is_onto(
                    &osp::basis(Flavor::Odd, k1 - 1, l1)?,
                    &osp::basis(Flavor::Primed, 2 * k1 - 1, l1)?,
                    &osp::basis_change_s(Flavor::Odd, k1, l1)?,
                )?;
                let even = conjugation_is_onto(
                    &osp::basis(Flavor::Even, k1, l1)?,
                    &osp::basis(Flavor::Primed, 2 * k1, l1)?,
                    &osp::basis_change_s(Flavor::Even, k1, l1)?,
                )?;
                Ok((
                    odd && even,
                    format!("odd flavor: {odd}, even flavor: {even}"),
                ))
            },
        );
        run("dj-brackets", "dj[X, Y] = [dj X, dj Y]", &|| {
            let src = osp::basis(Flavor::Primed, 2 * k1 - 1, l1)?;
            let target = osp::gram_form(Flavor::Primed, 2 * k1, l1)?;
            let g = src.generators();
            let mut pairs = 0;
            for (p, x) in g.iter().enumerate() {
                if !osp::is_member(&osp::embed_j(&x.matrix)?, &target)? {
                    return Ok((false, format!("dj {} leaves osp(2k₁|2l₁)", x.tag)));
                }
                for y in &g[p..] {
                    let lhs = osp::embed_j(&x.matrix.superbracket(&y.matrix)?)?;
                    let rhs = osp::embed_j(&x.matrix)?.superbracket(&osp::embed_j(&y.matrix)?)?;
                    if lhs != rhs {
                        return Ok((false, format!("({}, {})", x.tag, y.tag)));
                    }
                    pairs += 1;
                }
            }
            Ok((true, format!("{pairs} pairs")))
        });
        run(
            "image-slice",
            "j-image = elements with vanishing first row and column",
            &|| {
                let img = j_image(k1, l1)?;
                let amb = osp::basis(Flavor::Primed, 2 * k1, l1)?;
                let d = amb.shape().dim();
                let slice_eqs: Vec<Vec<FieldScalar>> = (0..d)
                    .flat_map(|t| [(0, t), (t, 0)])
                    .map(|(i, j)| {
                        amb.generators()
                            .iter()
                            .map(|g| g.matrix.get(i, j).clone())
                            .collect()
                    })
                    .collect();
                let slice_dim = linalg::nullspace(&slice_eqs, amb.len()).len();
                let inside = img.generators().iter().all(|g| {
                    (0..d).all(|t| g.matrix.get(0, t).is_zero() && g.matrix.get(t, 0).is_zero())
                });
                let ok = inside && img.is_independent() && img.len() == slice_dim;
                Ok((
                    ok,
                    format!("dim j-image {}, dim slice {slice_dim}", img.len()),
                ))
            },
        );
        run("dj-parabolic", "dj(𝔭) ⊆ 𝔭¹", &|| {
            let aligned = osp::dj_parabolic_failures(k1, l1, &osp::aligned_basis_change(k1, l1)?)?;
            let literal =
                osp::dj_parabolic_failures(k1, l1, &osp::basis_change_s(Flavor::Even, k1, l1)?)?;
            let w = format!(
                "aligned S¹: {} outside; literal S: {} outside{}",
                aligned.len(),
                literal.len(),
                if literal.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", list(&literal))
                }
            );
            Ok((aligned.is_empty(), w))
        });
        // parabolics are subalgebras
        run("parabolics-closed", "𝔭, 𝔭¹ are subalgebras", &|| {
            let ok = osp::closure_check(&osp::parabolic_basis(Parabolic::P, k1, l1)?).is_ok()
                && osp::closure_check(&osp::parabolic_basis(Parabolic::P1, k1, l1)?).is_ok();
            Ok((ok, String::new()))
        });
    }))
}

// ---------------------------------------------------------------------------
// imP_witness

/// The two odd block matrices of the proper-image argument with `A`, `B`
/// filled by odd symbols (`B` supported on its first row), their bracket and
/// the displayed result `−B₂A₁ᵀ+B₁A₂ᵀ`, `−A₁B₂ᵀ+A₂B₁ᵀ`.
#[derive(Clone, Debug)]
pub struct ImpWitness {
    pub first: PolyMatrix,
    pub second: PolyMatrix,
    pub bracket: PolyMatrix,
    pub displayed: PolyMatrix,
    /// The first matrix again, with fresh symbols `c1`, `c2`.
    pub first_copy: PolyMatrix,
}

pub fn imp_witness(k1: usize, l1: usize) -> Result<ImpWitness> {
    if k1 == 0 || l1 == 0 {
        return Err(Error::InvalidSize("k1 and l1 must be at least 1".into()));
    }
    let mut names = Vec::new();
    for blk in ["a1", "a2", "b1", "b2", "c1", "c2"] {
        let rows = if blk.starts_with('b') { 1 } else { k1 };
        for s in 1..=rows {
            for t in 1..=l1 {
                names.push((format!("{blk}_{s}_{t}"), Parity::Odd));
            }
        }
    }
    let ctx = RingContext::new(&names)?;
    let block = |name: &str| -> PolyMatrix {
        let mut m = PolyMatrix::zeros(BlockShape::new(k1, 0), BlockShape::new(l1, 0));
        for s in 0..k1 {
            for t in 0..l1 {
                if let Ok(v) = ctx.var(&format!("{name}_{}_{}", s + 1, t + 1)) {
                    m.set(s, t, v.poly());
                }
            }
        }
        m
    };
    let shape = osp::shape_of(Flavor::Primed, 2 * k1, l1);
    let d = shape.dim();
    let (o1, o2, o3) = (k1, 2 * k1, 2 * k1 + l1);
    let assemble = |parts: &[(usize, usize, PolyMatrix)]| -> Result<PolyMatrix> {
        let mut e = vec![SuperPoly::zero(); d * d];
        for (r0, c0, x) in parts {
            for i in 0..x.nrows() {
                for j in 0..x.ncols() {
                    e[(r0 + i) * d + c0 + j] = x.get(i, j).clone();
                }
            }
        }
        SuperMatrix::from_entries(shape.clone(), shape.clone(), e)
    };
    let first_with = |p: &str, q: &str| {
        let (x1, x2) = (block(p), block(q));
        assemble(&[
            (o1, o2, x1.clone()),
            (o1, o3, x2.clone()),
            (o2, o1, x2.transpose().neg()),
            (o3, o1, x1.transpose()),
        ])
    };
    let (a1, a2, b1, b2) = (block("a1"), block("a2"), block("b1"), block("b2"));
    let first = first_with("a1", "a2")?;
    let first_copy = first_with("c1", "c2")?;
    let second = assemble(&[
        (0, o2, b1.clone()),
        (0, o3, b2.clone()),
        (o2, 0, b2.transpose().neg()),
        (o3, 0, b1.transpose()),
    ])?;
    let bracket = first.superbracket(&second)?;
    let top = b2
        .try_mul(&a1.transpose())?
        .neg()
        .try_add(&b1.try_mul(&a2.transpose())?)?;
    let bottom = a1
        .try_mul(&b2.transpose())?
        .neg()
        .try_add(&a2.try_mul(&b1.transpose())?)?;
    let displayed = assemble(&[(0, o1, top), (o1, 0, bottom)])?;
    Ok(ImpWitness {
        first,
        second,
        bracket,
        displayed,
        first_copy,
    })
}

/// Monomials whose coefficient matrix lies outside the span.
fn outside(m: &PolyMatrix, span: &Basis) -> Vec<String> {
    m.coefficient_matrices()
        .into_iter()
        .filter(|(_, n)| !span.contains(n))
        .map(|(mono, _)| {
            let ctx = m.entries().iter().find_map(|e| e.context().cloned());
            SuperPoly::from_terms(ctx, [(mono, FieldScalar::one())]).to_string()
        })
        .collect()
}

pub fn suite_imp_witness(k1: usize, l1: usize) -> Result<SuiteReport> {
    let w = imp_witness(k1, l1)?;
    let tag = format!("({k1},{l1})");
    Ok(timed("imP_witness", |r| {
        let even_part = |b: &Basis| b.restrict(|t| t.block.parity() == Parity::Even);
        let odd_part = |b: &Basis| b.restrict(|t| t.block.parity() == Parity::Odd);
        r.check(
            format!("{tag}/display"),
            "[X, Y] has blocks −B₂A₁ᵀ+B₁A₂ᵀ and −A₁B₂ᵀ+A₂B₁ᵀ",
            w.bracket == w.displayed,
            if w.bracket == w.displayed {
                w.bracket.to_literal()
            } else {
                format!("got {}\nexpected {}", w.bracket, w.displayed)
            },
        );
        let mut run = |id: &str, anchor: &str, f: &dyn Fn() -> Result<(bool, String)>| match f() {
            Ok((ok, s)) => r.check(format!("{tag}/{id}"), anchor, ok, s),
            Err(e) => r.error(format!("{tag}/{id}"), anchor, &e),
        };
        run(
            "first-in-j-image",
            "X ∈ osp(2k₁−1|2l₁) ⊂ osp(2k₁|2l₁)",
            &|| {
                let bad = outside(&w.first, &odd_part(&j_image(k1, l1)?));
                Ok((
                    bad.is_empty(),
                    if bad.is_empty() {
                        "all coefficient matrices in dj(osp(2k₁−1|2l₁))₁".into()
                    } else {
                        list(bad)
                    },
                ))
            },
        );
        run("bracket-in-osp", "[X, Y] ∈ osp(2k₁|2l₁)₀", &|| {
            let amb = osp::basis(Flavor::Primed, 2 * k1, l1)?;
            let gram = amb.gram().expect("osp basis has a Gram form");
            let bad = outside(&w.bracket, &even_part(&amb));
            Ok((
                osp::is_member(&w.bracket, gram)?
                    && w.bracket.parity() == Some(Parity::Even)
                    && bad.is_empty(),
                list(bad),
            ))
        });
        run(
            "bracket-outside-j-image",
            "[X, Y] ∉ osp(2k₁−1|2l₁)₀",
            &|| {
                let bad = outside(&w.bracket, &even_part(&j_image(k1, l1)?));
                Ok((
                    !bad.is_empty(),
                    format!("no solution for the coefficients of {}", list(bad)),
                ))
            },
        );
        run("control", "[X, X′] ∈ osp(2k₁−1|2l₁)₀", &|| {
            let c = w.first.superbracket(&w.first_copy)?;
            let bad = outside(&c, &even_part(&j_image(k1, l1)?));
            Ok((bad.is_empty() && !c.is_zero(), list(bad)))
        });
    }))
}

// ---------------------------------------------------------------------------
// bwb

pub fn suite_bwb(k1: usize, l1: usize) -> Result<SuiteReport> {
    if k1 == 0 || l1 == 0 {
        return Err(Error::InvalidSize("k1 and l1 must be at least 1".into()));
    }
    let tag = format!("({k1},{l1})");
    Ok(timed("bwb", |r| {
        let psi = weights::psi_highest_weights(k1, l1);
        let rs = weights::root_system(k1 - 1, l1);
        let expected: Vec<weights::Weight> = if k1 >= 2 {
            vec![weights::Weight::zero(k1 - 1, l1)]
        } else {
            Vec::new()
        };
        match weights::bwb_dominant_filter(&psi, &rs) {
            Ok(dom) => r.check(
                format!("{tag}/dominant"),
                "dominant weights of ψ|R",
                dom == expected,
                format!("ψ|R: [{}]; dominant: [{}]", list(&psi), list(&dom)),
            ),
            Err(e) => r.error(format!("{tag}/dominant"), "dominant weights of ψ|R", &e),
        };
        let want = if k1 >= 2 { "ℂ" } else { "{0}" };
        match weights::w0_fiber_description(k1, l1) {
            Ok(d) => r.check(
                format!("{tag}/fiber"),
                "W̃₀(ℬ₀) as an osp₀-module",
                d.to_string() == want,
                d.to_string(),
            ),
            Err(e) => r.error(format!("{tag}/fiber"), "W̃₀(ℬ₀) as an osp₀-module", &e),
        };
    }))
}

// ---------------------------------------------------------------------------
// run_all

/// Sizes for every suite. Unset lists use the defaults below.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_max")]
    pub max_size: usize,
    #[serde(default = "default_suites")]
    pub suites: Vec<String>,
    #[serde(default = "default_osp")]
    pub osp_defining: Vec<(usize, usize)>,
    #[serde(default = "default_lemma")]
    pub lemma_fields: Vec<(usize, usize)>,
    #[serde(default = "default_iso")]
    pub isomorphism: Vec<(usize, usize)>,
    #[serde(default = "default_iso", rename = "imP_witness")]
    pub imp_witness: Vec<(usize, usize)>,
    #[serde(default = "default_bwb")]
    pub bwb: Vec<(usize, usize)>,
}

fn default_max() -> usize {
    DEFAULT_MAX_SIZE
}

fn default_suites() -> Vec<String> {
    SUITES.iter().map(|s| s.to_string()).collect()
}

fn default_osp() -> Vec<(usize, usize)> {
    vec![(0, 1), (1, 0), (1, 1), (2, 1), (1, 2)]
}

fn default_lemma() -> Vec<(usize, usize)> {
    vec![(1, 1), (2, 1), (2, 2), (3, 1)]
}

fn default_iso() -> Vec<(usize, usize)> {
    vec![(1, 1), (2, 1), (2, 2)]
}

fn default_bwb() -> Vec<(usize, usize)> {
    (1..=6).flat_map(|k| (1..=4).map(move |l| (k, l))).collect()
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_size: default_max(),
            suites: default_suites(),
            osp_defining: default_osp(),
            lemma_fields: default_lemma(),
            isomorphism: default_iso(),
            imp_witness: default_iso(),
            bwb: default_bwb(),
        }
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

impl Config {
    /// Parses TOML; errors carry the 1-based line number.
    pub fn from_toml(text: &str) -> Result<Config> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config {
            line: e.span().map(|s| line_of(text, s.start)),
            message: e.message().to_string(),
        })?;
        for s in &cfg.suites {
            if !SUITES.contains(&s.as_str()) {
                let line = text.find(&format!("\"{s}\"")).map(|o| line_of(text, o));
                return Err(Error::Config {
                    line,
                    message: format!("unknown suite `{s}`"),
                });
            }
        }
        Ok(cfg)
    }

    /// The configuration with only one suite at one size.
    pub fn single(suite: &str, a: usize, b: usize) -> Result<Config> {
        if !SUITES.contains(&suite) {
            return Err(Error::Config {
                line: None,
                message: format!("unknown suite `{suite}`"),
            });
        }
        let one = vec![(a, b)];
        Ok(Config {
            suites: vec![suite.to_string()],
            osp_defining: one.clone(),
            lemma_fields: one.clone(),
            isomorphism: one.clone(),
            imp_witness: one.clone(),
            bwb: one,
            ..Config::default()
        })
    }

    fn validate(&self) -> Result<()> {
        for s in &self.suites {
            let sizes = match s.as_str() {
                "osp_defining" => &self.osp_defining,
                "lemma_fields" => &self.lemma_fields,
                "isomorphism" => &self.isomorphism,
                "imP_witness" => &self.imp_witness,
                // weights only, no symbolic cost
                "bwb" => continue,
                other => {
                    return Err(Error::Config {
                        line: None,
                        message: format!("unknown suite `{other}`"),
                    })
                }
            };
            for &(a, b) in sizes {
                bound(self.max_size, &[a, b])?;
            }
        }
        Ok(())
    }
}

/// Runs the configured suites in order and aggregates their reports.
pub fn run_all(cfg: &Config) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut parts = Vec::new();
    for s in &cfg.suites {
        match s.as_str() {
            "osp_defining" => {
                for &(m, n) in &cfg.osp_defining {
                    parts.push(suite_osp_defining(m, n)?);
                }
            }
            "lemma_fields" => {
                for &(k1, l1) in &cfg.lemma_fields {
                    parts.push(suite_lemma_fields(k1, l1, &default_tail(k1, l1))?);
                }
            }
            "isomorphism" => {
                for &(k1, l1) in &cfg.isomorphism {
                    parts.push(suite_isomorphism(k1, l1)?);
                }
            }
            "imP_witness" => {
                for &(k1, l1) in &cfg.imp_witness {
                    parts.push(suite_imp_witness(k1, l1)?);
                }
            }
            "bwb" => {
                for &(k1, l1) in &cfg.bwb {
                    parts.push(suite_bwb(k1, l1)?);
                }
            }
            _ => unreachable!("validated"),
        }
    }
    let name = if cfg.suites.len() == 1 {
        cfg.suites[0].clone()
    } else {
        "all".to_string()
    };
    Ok(SuiteReport::aggregate(&name, parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for r in [
            suite_osp_defining(1, 1).unwrap(),
            suite_osp_defining(0, 1).unwrap(),
            suite_lemma_fields(2, 1, &[(1, 0)]).unwrap(),
            suite_isomorphism(1, 1).unwrap(),
            suite_imp_witness(1, 1).unwrap(),
            suite_bwb(3, 2).unwrap(),
        ] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn osp_defining_witnesses() {
        let r = suite_osp_defining(1, 1).unwrap();
        assert_eq!(
            r.checks[0].witness,
            "6 even + 6 odd generators, expected 6 + 6"
        );
        let r = suite_osp_defining(0, 1).unwrap();
        assert_eq!(
            r.checks[0].witness,
            "3 even + 2 odd generators, expected 3 + 2"
        );
    }

    #[test]
    fn config_parsing() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
        let c = Config::from_toml("suites = [\"bwb\"]\nbwb = [[3, 2]]\n").unwrap();
        assert_eq!(c.bwb, vec![(3, 2)]);
        match Config::from_toml("max_size = 3\nsuites = [\"bwb\",\n  \"nope\"]\n") {
            Err(Error::Config { line: Some(3), .. }) => {}
            other => panic!("{other:?}"),
        }
        match Config::from_toml("max_size = 3\nbogus = 1\n") {
            Err(Error::Config { line: Some(2), .. }) => {}
            other => panic!("{other:?}"),
        }
        let c = Config {
            osp_defining: vec![(4, 1)],
            ..Config::default()
        };
        assert!(matches!(run_all(&c), Err(Error::InvalidSize(_))));
    }
}
