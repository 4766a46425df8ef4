//! Seeded random generators and the property checks shared by the
//! integration tests and the acceptance run.
#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superflag::flag::PolyMatrix;
use superflag::osp::Generator;
use superflag::weights::{root_system, Weight};
use superflag::*;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small element of ℚ(i, √2).
pub fn scalar(r: &mut ChaCha8Rng) -> FieldScalar {
    let mut c = || FieldScalar::frac(r.gen_range(-3..=3), r.gen_range(1..=2));
    let (a, b, s, t) = (c(), c(), c(), c());
    a + b * FieldScalar::i()
        + s * FieldScalar::sqrt2()
        + t * FieldScalar::i() * FieldScalar::sqrt2()
}

pub fn nonzero_scalar(r: &mut ChaCha8Rng) -> FieldScalar {
    loop {
        let s = scalar(r);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Context with even `x1..` and odd `t1..`.
pub fn ring(even: usize, odd: usize) -> Arc<RingContext> {
    let mut vars: Vec<(String, Parity)> = (1..=even)
        .map(|i| (format!("x{i}"), Parity::Even))
        .collect();
    vars.extend((1..=odd).map(|i| (format!("t{i}"), Parity::Odd)));
    RingContext::new(&vars).unwrap()
}

/// Product of randomly ordered generators with the given parity.
pub fn monomial(r: &mut ChaCha8Rng, ctx: &Arc<RingContext>, parity: Parity) -> SuperPoly {
    let vars = ctx.variables();
    let (even, odd): (Vec<_>, Vec<_>) = vars.into_iter().partition(|v| v.parity() == Parity::Even);
    let mut factors = Vec::new();
    for v in &even {
        for _ in 0..r.gen_range(0..=2) {
            factors.push(v.poly());
        }
    }
    let mut odd = odd;
    odd.shuffle(r);
    let mut count = r.gen_range(0..=odd.len().min(3));
    if count % 2 != parity.bit() {
        count = if count < odd.len() {
            count + 1
        } else {
            count - 1
        };
    }
    factors.extend(odd.iter().take(count).map(|v| v.poly()));
    factors.shuffle(r);
    factors.iter().fold(SuperPoly::one(), |acc, f| &acc * f)
}

pub fn poly(r: &mut ChaCha8Rng, ctx: &Arc<RingContext>, parity: Parity, terms: usize) -> SuperPoly {
    (0..terms).fold(SuperPoly::zero().rebind(ctx).unwrap(), |acc, _| {
        let m = monomial(r, ctx, parity).scale(&scalar(r));
        &acc + &m
    })
}

/// Random homogeneous numeric matrix.
pub fn num_matrix(r: &mut ChaCha8Rng, shape: &BlockShape, parity: Parity) -> NumMatrix {
    let d = shape.dim();
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let fits = shape.parity(i) + shape.parity(j) == parity;
            entries.push(if fits && r.gen_bool(0.7) {
                scalar(r)
            } else {
                FieldScalar::zero()
            });
        }
    }
    NumMatrix::from_entries(shape.clone(), shape.clone(), entries)
        .unwrap()
        .with_parity(parity)
        .unwrap()
}

/// Even invertible supermatrix: an invertible numeric body preserving the
/// given index rows (zero below them), plus odd-linear terms in the
/// off-diagonal parity blocks and `t_a t_b` terms in the diagonal ones.
pub fn group_element(
    r: &mut ChaCha8Rng,
    shape: &BlockShape,
    ctx: &Arc<RingContext>,
    fixed: &[usize],
) -> PolyMatrix {
    let d = shape.dim();
    let odd: Vec<Variable> = ctx
        .variables()
        .into_iter()
        .filter(|v| v.parity() == Parity::Odd)
        .collect();
    loop {
        let mut m = PolyMatrix::zeros(shape.clone(), shape.clone());
        for i in 0..d {
            for j in 0..d {
                let same = shape.parity(i) == shape.parity(j);
                // B[I, not I] = 0 keeps the span of the I rows stable
                let blocked = fixed.contains(&i) && !fixed.contains(&j);
                let mut e = SuperPoly::zero().rebind(ctx).unwrap();
                if same && !blocked && (i == j || r.gen_bool(0.6)) {
                    e = SuperPoly::constant(if i == j { nonzero_scalar(r) } else { scalar(r) })
                        .rebind(ctx)
                        .unwrap();
                }
                if !odd.is_empty() && r.gen_bool(0.5) {
                    if same && odd.len() >= 2 {
                        let (a, b) = (r.gen_range(0..odd.len()), r.gen_range(0..odd.len()));
                        e = &e + &(&odd[a].poly() * &odd[b].poly()).scale(&scalar(r));
                    } else if !same {
                        e = &e + &odd[r.gen_range(0..odd.len())].poly().scale(&scalar(r));
                    }
                }
                m.set(i, j, e);
            }
        }
        if m.invert().is_ok() {
            return m;
        }
    }
}

// ---------------------------------------------------------------------------
// property checks

/// `pq = (−1)^{|p||q|} qp` and nilpotence of repeated odd generators.
pub fn check_supercommutativity(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let ctx = ring(2, 4);
    for case in 0..cases {
        let (pp, pq) = (
            Parity::from_bit(r.gen_range(0..2)),
            Parity::from_bit(r.gen_range(0..2)),
        );
        let p = poly(&mut r, &ctx, pp, 3);
        let q = poly(&mut r, &ctx, pq, 3);
        let lhs = &p * &q;
        let rhs = (&q * &p).scale(&FieldScalar::from_i64(pp.koszul(pq)));
        if lhs != rhs {
            return Err(format!(
                "case {case}: ({p})({q}) = {lhs}, sign-swapped = {rhs}"
            ));
        }
        if pp == Parity::Odd && !(&p * &p).is_zero() {
            return Err(format!("case {case}: odd {p} squares to nonzero"));
        }
    }
    Ok(())
}

/// `∂_u∂_v = (−1)^{|u||v|} ∂_v∂_u`, `∂_ξ∂_ξ = 0`, and the graded Leibniz rule.
pub fn check_derivative_anticommutation(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let ctx = ring(2, 4);
    let vars = ctx.variables();
    for case in 0..cases {
        let pf = Parity::from_bit(r.gen_range(0..2));
        let f = poly(&mut r, &ctx, pf, 4);
        let u = vars.choose(&mut r).unwrap();
        let v = vars.choose(&mut r).unwrap();
        let d = |p: &SuperPoly, w: &Variable| p.left_derivative(w).unwrap();
        let uv = d(&d(&f, v), u);
        let vu = d(&d(&f, u), v).scale(&FieldScalar::from_i64(u.parity().koszul(v.parity())));
        if uv != vu {
            return Err(format!("case {case}: d{} d{} on {f}", u.name(), v.name()));
        }
        if u.parity() == Parity::Odd && !d(&d(&f, u), u).is_zero() {
            return Err(format!("case {case}: d{}^2 on {f} is nonzero", u.name()));
        }
        let pg = Parity::from_bit(r.gen_range(0..2));
        let g = poly(&mut r, &ctx, pg, 3);
        let fp = f.parity().unwrap_or(Parity::Even);
        let lhs = d(&(&f * &g), u);
        let rhs = &(&d(&f, u) * &g)
            + &(&f * &d(&g, u)).scale(&FieldScalar::from_i64(u.parity().koszul(fp)));
        if lhs != rhs {
            return Err(format!(
                "case {case}: Leibniz for d{} on ({f})({g})",
                u.name()
            ));
        }
    }
    Ok(())
}

/// `(MN)^{ST} = (−1)^{|M||N|} N^{ST} M^{ST}` on homogeneous numeric pairs.
pub fn check_st_product_rule(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let shape = BlockShape::new(r.gen_range(1..=3), r.gen_range(1..=3));
        let (pm, pn) = (
            Parity::from_bit(r.gen_range(0..2)),
            Parity::from_bit(r.gen_range(0..2)),
        );
        let m = num_matrix(&mut r, &shape, pm);
        let n = num_matrix(&mut r, &shape, pn);
        let lhs = m
            .try_mul(&n)
            .unwrap()
            .with_parity(pm + pn)
            .unwrap()
            .supertranspose()
            .unwrap();
        let rhs = n
            .supertranspose()
            .unwrap()
            .try_mul(&m.supertranspose().unwrap())
            .unwrap()
            .scale(&FieldScalar::from_i64(pm.koszul(pn)));
        if lhs != rhs {
            return Err(format!("case {case}: M = {m}, N = {n}"));
        }
    }
    Ok(())
}

/// `M·M⁻¹ = M⁻¹·M = I` for numeric-plus-nilpotent `M`.
pub fn check_two_sided_inverse(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    let ctx = ring(0, 4);
    for case in 0..cases {
        let shape = BlockShape::new(r.gen_range(1..=3), r.gen_range(1..=2));
        let m = group_element(&mut r, &shape, &ctx, &[]);
        let inv = m.invert().map_err(|e| format!("case {case}: {e}"))?;
        let id = PolyMatrix::identity(shape.clone());
        if m.try_mul(&inv).unwrap() != id || inv.try_mul(&m).unwrap() != id {
            return Err(format!("case {case}: M = {m}"));
        }
    }
    Ok(())
}

/// Simple-root and positive-root dominance agree, exhaustively for
/// coordinates in −3..3 and s, n ≤ 3; dominance is invariant under positive
/// integer scaling.
pub fn check_dominance_equivalence() -> Check {
    for s in 0..=3usize {
        for n in 0..=3usize {
            let rs = root_system(s, n);
            let len = s + n;
            let total = 7usize.pow(len as u32);
            for code in 0..total {
                let mut c = code;
                let coords: Vec<i64> = (0..len)
                    .map(|_| {
                        let x = (c % 7) as i64 - 3;
                        c /= 7;
                        x
                    })
                    .collect();
                let w = Weight {
                    mu: coords[..s].to_vec(),
                    lambda: coords[s..].to_vec(),
                };
                let full = rs.is_dominant(&w).unwrap();
                if full != rs.is_dominant_simple(&w).unwrap() {
                    return Err(format!("({s},{n}): {w}"));
                }
                if rs.is_dominant(&w.scale(3)).unwrap() != full {
                    return Err(format!("({s},{n}): scaling {w}"));
                }
            }
        }
    }
    Ok(())
}

/// Super-Jacobi for the matrix superbracket on random homogeneous triples.
pub fn check_matrix_jacobi(seed: u64, cases: usize) -> Check {
    let mut r = rng(seed);
    for case in 0..cases {
        let shape = BlockShape::new(r.gen_range(1..=2), r.gen_range(1..=2));
        let ps: Vec<Parity> = (0..3)
            .map(|_| Parity::from_bit(r.gen_range(0..2)))
            .collect();
        let x = num_matrix(&mut r, &shape, ps[0]);
        let y = num_matrix(&mut r, &shape, ps[1]);
        let z = num_matrix(&mut r, &shape, ps[2]);
        let br = |a: &NumMatrix, b: &NumMatrix, pa: Parity, pb: Parity| {
            a.clone()
                .with_parity(pa)
                .unwrap()
                .superbracket(&b.clone().with_parity(pb).unwrap())
                .unwrap()
        };
        let lhs = br(&x, &br(&y, &z, ps[1], ps[2]), ps[0], ps[1] + ps[2]);
        let a = br(&br(&x, &y, ps[0], ps[1]), &z, ps[0] + ps[1], ps[2]);
        let b = br(&y, &br(&x, &z, ps[0], ps[2]), ps[1], ps[0] + ps[2])
            .scale(&FieldScalar::from_i64(ps[0].koszul(ps[1])));
        if lhs != a.try_add(&b).unwrap() {
            return Err(format!("case {case}"));
        }
    }
    Ok(())
}

/// Tags of a basis for messages.
pub fn tags(gens: &[Generator]) -> Vec<String> {
    gens.iter().map(|g| g.tag.to_string()).collect()
}
