use rayon::prelude::*;

use crate::cocycle::{gamma_value, require_cocycle, Cochain3};
use crate::cyclotomic::{lcm, sqrt_positive_integer, CyclotomicNumber, RootOfUnity};
use crate::group::{FiniteAbelianGroup, QuadraticForm};

use super::bracket::{assoc_scalar, Bracketing};
use super::matrix::{DenseMatrix, MonomialMatrix};
use super::RepError;

/// Largest basis the builders will materialize.
pub const MAX_DIMENSION: usize = 1 << 16;

fn basis_size(base: usize, n: usize) -> Result<usize, RepError> {
    u32::try_from(n)
        .ok()
        .and_then(|n| base.checked_pow(n))
        .filter(|&d| d <= MAX_DIMENSION)
        .ok_or_else(|| RepError::Dimension(format!("{base}^{n} exceeds the basis limit {MAX_DIMENSION}")))
}

fn decode(mut idx: usize, base: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

fn encode(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * base + x)
}

/// First triple violating bimultiplicativity of a table on `A`.
pub fn bimultiplicativity_violation(a: &FiniteAbelianGroup, c: &[Vec<RootOfUnity>]) -> Option<(usize, usize, usize)> {
    for x in a.elements() {
        for y in a.elements() {
            for z in a.elements() {
                if c[a.add(x, y)][z] != c[x][z].mul(c[y][z]) || c[x][a.add(y, z)] != c[x][y].mul(c[x][z]) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// `σ_i (a₁,…,a_n) = c(a_i, a_{i+1}) · (…, a_{i+1}, a_i, …)` on the basis `A^n`.
pub fn pointed_rep(a: &FiniteAbelianGroup, c: &[Vec<RootOfUnity>], n: usize) -> Result<Vec<MonomialMatrix>, RepError> {
    if n < 2 {
        return Err(RepError::Strands(n));
    }
    let k = a.order();
    if c.len() != k || c.iter().any(|r| r.len() != k) {
        return Err(RepError::Parameter(format!("braiding table must be {k}×{k}")));
    }
    if let Some((x, y, z)) = bimultiplicativity_violation(a, c) {
        return Err(RepError::NotBimultiplicative { a: x, b: y, c: z });
    }
    let dim = basis_size(k, n)?;
    Ok((0..n - 1)
        .map(|i| {
            let (perm, scalars) = (0..dim)
                .map(|b| {
                    let mut t = decode(b, k, n);
                    let s = c[t[i]][t[i + 1]];
                    t.swap(i, i + 1);
                    (encode(&t, k), s)
                })
                .unzip();
            MonomialMatrix::new(perm, scalars).expect("a permutation of the basis")
        })
        .collect())
}

/// Braid generators on `I(x)^{⊗n}` for `Vec_G^α` with its crossed structure,
/// on the basis `(g₁,…,g_n)` standing for `g₁(x)⊗⋯⊗g_n(x)` in left-comb bracketing.
///
/// Generator `i` sends `(…, g_i, g_{i+1}, …)` to `(…, g_i x g_i⁻¹ g_{i+1}, g_i, …)`
/// with scalar `γ_{d_i, g_{i+1}}(x)` conjugated by the associators that bring the
/// two factors together and back, where `d_j = g_j x g_j⁻¹`.
pub fn double_rep(alpha: &Cochain3, x: usize, n: usize) -> Result<Vec<MonomialMatrix>, RepError> {
    require_cocycle(alpha)?;
    let g = alpha.group();
    if x >= g.order() {
        return Err(RepError::Parameter(format!("x = {x} is not an element of a group of order {}", g.order())));
    }
    if n < 2 {
        return Err(RepError::Strands(n));
    }
    let k = g.order();
    let dim = basis_size(k, n)?;
    let comb = Bracketing::left_comb(n);
    (0..n - 1)
        .map(|i| {
            let paired = Bracketing::with_pair(n, i);
            let rows: Vec<(usize, RootOfUnity)> = (0..dim)
                .into_par_iter()
                .map(|b| {
                    let t = decode(b, k, n);
                    let degs: Vec<usize> = t.iter().map(|&gj| g.conj(gj, x)).collect();
                    let mut u = t.clone();
                    u[i] = g.mul(degs[i], t[i + 1]);
                    u[i + 1] = t[i];
                    let new_degs: Vec<usize> = u.iter().map(|&gj| g.conj(gj, x)).collect();
                    let into = assoc_scalar(alpha, &degs, &comb, &paired).expect("valid bracketings");
                    let back = assoc_scalar(alpha, &new_degs, &paired, &comb).expect("valid bracketings");
                    let s = into.mul(gamma_value(alpha, degs[i], t[i + 1], x)).mul(back);
                    (encode(&u, k), s)
                })
                .collect();
            let (perm, scalars) = rows.into_iter().unzip();
            Ok(MonomialMatrix::new(perm, scalars).expect("a permutation of the basis"))
        })
        .collect()
}

/// Output of [`ty_rep`].
#[derive(Debug, Clone)]
pub struct TyRep {
    /// `σ̃_1, …, σ̃_{2m}`, generators of `B_{2m+1}`.
    pub generators: Vec<DenseMatrix>,
    pub tau: CyclotomicNumber,
    pub delta_squared: RootOfUnity,
    pub delta: RootOfUnity,
    pub conductor: u32,
}

/// Generators for the center of `TY(A, χ, τ)` acting on `m`-tuples of `A`.
///
/// `τ = ±1/√|A|`, `Δ² = τ Σ_a q(a)⁻¹`, and `Δ` is the square root `ζ_{2M}^e`
/// of `Δ² = ζ_M^e`, negated when `delta_choice = 1`. With `a₀ = 0`,
/// `σ̃_{2i−1}` is diagonal with entries `Δ q(a_{i−1} − a_i)⁻¹` and `σ̃_{2i}`
/// sends `a` to `τΔ³ Σ_b q(a_i − b) · a[i ↦ b]`.
pub fn ty_rep(q: &QuadraticForm, tau_sign: i8, delta_choice: u8, m: usize) -> Result<TyRep, RepError> {
    if m == 0 {
        return Err(RepError::Parameter("m must be at least 1".into()));
    }
    if tau_sign != 1 && tau_sign != -1 {
        return Err(RepError::Parameter(format!("tau_sign must be ±1, got {tau_sign}")));
    }
    if delta_choice > 1 {
        return Err(RepError::Parameter(format!("delta_choice must be 0 or 1, got {delta_choice}")));
    }
    let a = q.group();
    if !q.bicharacter().is_nondegenerate() {
        return Err(RepError::Parameter("χ is degenerate".into()));
    }
    let k = a.order();
    let dim = basis_size(k, m)?;

    let base = q
        .values()
        .iter()
        .fold(lcm(8, 4 * k as u32), |acc, v| lcm(acc, v.order() as u32));
    let root_a = sqrt_positive_integer(k as u64).coerce(base)?;
    let tau = CyclotomicNumber::from_integer(base, tau_sign as i64).divide(&root_a)?;
    let gauss = q
        .values()
        .iter()
        .map(|v| v.inv().to_cyclotomic(base))
        .try_fold(CyclotomicNumber::zero(base), |acc, v| v.map(|v| acc.try_add(&v)))?;
    let delta_sq_exact = tau.multiply(&gauss);
    let delta_squared = RootOfUnity::from_cyclotomic(&delta_sq_exact)
        .ok_or_else(|| RepError::DeltaNotRoot(delta_sq_exact.to_string()))?;
    let mut delta = delta_squared.sqrt();
    if delta_choice == 1 {
        delta = delta.mul(RootOfUnity::minus_one());
    }
    let n = lcm(base, delta.order() as u32);
    let tau = tau.coerce(n)?;
    let t_d3 = tau.multiply(&delta.pow(3).to_cyclotomic(n)?);

    let mut generators = Vec::with_capacity(2 * m);
    for i in 0..m {
        let mut odd = DenseMatrix::zero(dim, n);
        for b in 0..dim {
            let t = decode(b, k, m);
            let prev = if i == 0 { 0 } else { t[i - 1] };
            let v = delta.mul(q.value(a.sub(prev, t[i])).inv());
            odd.set(b, b, v.to_cyclotomic(n)?)?;
        }
        generators.push(odd);

        let mut even = DenseMatrix::zero(dim, n);
        for col in 0..dim {
            let t = decode(col, k, m);
            let mut u = t.clone();
            for bval in a.elements() {
                u[i] = bval;
                let e = q.value(a.sub(t[i], bval)).exponent_at(n as u64).expect("q values lie in the field");
                even.set(encode(&u, k), col, t_d3.mul_root(e as i64))?;
            }
        }
        generators.push(even);
    }
    Ok(TyRep {
        generators,
        tau,
        delta_squared,
        delta,
        conductor: n,
    })
}

/// [`ty_rep`] on `strands` strands: `m = ⌊strands/2⌋`, keeping the first
/// `strands − 1` generators. Even strand counts restrict the `B_{strands+1}` build.
pub fn ty_rep_strands(q: &QuadraticForm, tau_sign: i8, delta_choice: u8, strands: usize) -> Result<TyRep, RepError> {
    if strands < 2 {
        return Err(RepError::Strands(strands));
    }
    let mut r = ty_rep(q, tau_sign, delta_choice, strands / 2)?;
    r.generators.truncate(strands - 1);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cocycle::builtin_cocycle_cyclic;
    use crate::group::{check_quadratic_form, Bicharacter, FiniteGroup};

    fn z(n: u32, e: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, e)
    }

    fn z2_form() -> QuadraticForm {
        let a = FiniteAbelianGroup::new(&[2]).unwrap();
        let q = [RootOfUnity::one(), RootOfUnity::new(4, 1)];
        let chi = Bicharacter::from_quadratic_values(&a, &q).unwrap();
        check_quadratic_form(&a, &chi, &q).unwrap().form.unwrap()
    }

    #[test]
    fn pointed_trivial_braiding_is_a_swap() {
        let a = FiniteAbelianGroup::new(&[3]).unwrap();
        let c = vec![vec![RootOfUnity::one(); 3]; 3];
        let g = pointed_rep(&a, &c, 2).unwrap();
        assert!(g[0].scalars().iter().all(|s| s.is_one()));
        assert_eq!(g[0].perm(1), 3);
    }

    #[test]
    fn pointed_z2_sign() {
        let a = FiniteAbelianGroup::new(&[2]).unwrap();
        let m1 = RootOfUnity::minus_one();
        let one = RootOfUnity::one();
        let c = vec![vec![one, one], vec![one, m1]];
        let g = pointed_rep(&a, &c, 2).unwrap();
        assert_eq!(g[0].scalar(3), m1);
        assert_eq!(g[0].perm(1), 2);
        assert!((0..3).all(|b| g[0].scalar(b).is_one()));
    }

    #[test]
    fn pointed_rejects_non_bimultiplicative() {
        let a = FiniteAbelianGroup::new(&[2]).unwrap();
        let one = RootOfUnity::one();
        let c = vec![vec![one, RootOfUnity::minus_one()], vec![one, one]];
        assert!(matches!(pointed_rep(&a, &c, 2), Err(RepError::NotBimultiplicative { .. })));
    }

    #[test]
    fn double_trivial_cocycle_abelian() {
        let alpha = Cochain3::trivial(Arc::new(FiniteGroup::cyclic(2).unwrap()));
        let g = double_rep(&alpha, 1, 2).unwrap();
        for b in 0..4 {
            let (g1, g2) = (b / 2, b % 2);
            assert_eq!(g[0].perm(b), ((1 + g2) % 2) * 2 + g1);
            assert!(g[0].scalar(b).is_one());
        }
    }

    /// Closed-form scalar: `γ_{d_i,g_{i+1}}(x) α(D,d_i,d_{i+1}) / α(D, d_i d_{i+1} d_i⁻¹, d_i)`
    /// with `D = d_1⋯d_{i−1}`, and no associator factors for the first generator.
    #[test]
    fn double_scalars_match_closed_form() {
        let alpha = builtin_cocycle_cyclic(4, 1).unwrap();
        let grp = alpha.group().clone();
        let (x, n) = (1, 4);
        let gens = double_rep(&alpha, x, n).unwrap();
        for (i, gen) in gens.iter().enumerate() {
            for b in 0..gen.dim() {
                let t = decode(b, 4, n);
                let d: Vec<usize> = t.iter().map(|&y| grp.conj(y, x)).collect();
                let mut s = gamma_value(&alpha, d[i], t[i + 1], x);
                if i > 0 {
                    let dd = grp.mul_all(&d[..i]);
                    let nd = grp.conj(d[i], d[i + 1]);
                    s = s.mul(alpha.get(dd, d[i], d[i + 1])).div(alpha.get(dd, nd, d[i]));
                }
                assert_eq!(gen.scalar(b), s, "generator {i}, basis {t:?}");
            }
        }
    }

    #[test]
    fn ty_z2_entries() {
        let r = ty_rep(&z2_form(), 1, 0, 1).unwrap();
        let n = r.conductor;
        let delta = r.delta.to_cyclotomic(n).unwrap();
        // Δ² = (1 − i)/√2
        let expect_sq = (&CyclotomicNumber::one(4) - &z(4, 1)).divide(&sqrt_positive_integer(2)).unwrap();
        assert_eq!(r.delta_squared.to_cyclotomic_min(), expect_sq);
        let s1 = &r.generators[0];
        assert_eq!(*s1.get(0, 0), delta);
        assert_eq!(*s1.get(1, 1), delta.multiply(&z(4, 3)));
        let s2 = &r.generators[1];
        let t_d3 = r.tau.multiply(&delta.pow(3).unwrap());
        assert_eq!(*s2.get(0, 0), t_d3);
        assert_eq!(*s2.get(0, 1), t_d3.multiply(&z(4, 1)));
        assert_eq!(*s2.get(1, 0), t_d3.multiply(&z(4, 1)));
        assert_eq!(s1.determinant(), delta.pow(2).unwrap().multiply(&z(4, 3)));
    }

    #[test]
    fn ty_trivial_group() {
        let a = FiniteAbelianGroup::trivial();
        let chi = Bicharacter::from_quadratic_values(&a, &[RootOfUnity::one()]).unwrap();
        let q = check_quadratic_form(&a, &chi, &[RootOfUnity::one()]).unwrap().form.unwrap();
        let r = ty_rep(&q, 1, 0, 1).unwrap();
        let delta = r.delta.to_cyclotomic(r.conductor).unwrap();
        assert_eq!(r.delta_squared, RootOfUnity::one());
        assert_eq!(*r.generators[0].get(0, 0), delta);
        assert_eq!(*r.generators[1].get(0, 0), r.tau.multiply(&delta.pow(3).unwrap()));
    }

    #[test]
    fn ty_delta_choice_negates() {
        let a = ty_rep(&z2_form(), 1, 0, 1).unwrap();
        let b = ty_rep(&z2_form(), 1, 1, 1).unwrap();
        assert_eq!(a.delta, b.delta.mul(RootOfUnity::minus_one()));
        assert!(ty_rep(&z2_form(), 1, 0, 0).is_err());
    }

    #[test]
    fn even_strands_restrict() {
        let r = ty_rep_strands(&z2_form(), 1, 0, 4).unwrap();
        assert_eq!(r.generators.len(), 3);
        assert_eq!(r.generators[0].dim(), 4);
    }
}
