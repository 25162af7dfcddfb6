//! Jacobson radical and top.
//!
//! In characteristic 0 the radical is the kernel of the trace form
//! `(x, y) ↦ tr(L_{xy})`. Over `F_p` the trace form only gives an upper bound,
//! which is refined by the p-power trace functionals
//! `g_i(x) = (tr(L̃_x^{p^i}) mod p^{i+1}) / p^i`, where `L̃_x` is any integer
//! lift of the left multiplication matrix: `I_i = {x ∈ I_{i-1} : g_i(xA) = 0}`
//! for `i ≤ log_p(dim A)`. Every `I_i` contains the radical, so the
//! refinement stops as soon as the candidate is nilpotent, and the final
//! candidate is always checked for nilpotency.

use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::linalg::{Field, Matrix, Subspace};

use super::algebra::{FiniteDimAlgebra, ModuleRep};

/// Gram matrix of the trace form on the basis.
fn trace_form<F: Field>(a: &FiniteDimAlgebra<F>) -> Matrix<F> {
    let f = a.field();
    let d = a.dim();
    let traces: Vec<F::Elem> = (0..d)
        .map(|k| {
            let mut t = f.zero();
            for m in 0..d {
                for (n, c) in a.product(k, m) {
                    if *n == m {
                        t = f.add(&t, c);
                    }
                }
            }
            t
        })
        .collect();
    let mut form = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut t = f.zero();
            for (k, c) in a.product(i, j) {
                f.add_mul_assign(&mut t, c, &traces[k.to_owned()]);
            }
            form.set(i, j, t);
        }
    }
    form
}

/// `tr(M^e) mod m` for a square integer matrix with entries below `m`.
fn power_trace(mat: &[u128], d: usize, mut exp: u64, m: u128) -> u128 {
    let mul = |x: &[u128], y: &[u128]| {
        let mut out = vec![0u128; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = x[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] = (out[i * d + j] + a * y[k * d + j]) % m;
                }
            }
        }
        out
    };
    let mut result: Vec<u128> = (0..d * d).map(|k| u128::from(k / d == k % d) % m).collect();
    let mut base = mat.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul(&result, &base);
        }
        exp >>= 1;
        if exp > 0 {
            base = mul(&base, &base);
        }
    }
    (0..d).fold(0, |t, i| (t + result[i * d + i]) % m)
}

/// `g_i(x)` over `F_p`.
fn p_trace<F: Field>(a: &FiniteDimAlgebra<F>, x: &[F::Elem], p: u64, i: u32) -> Result<u64> {
    let d = a.dim();
    let f = a.field();
    let l = a.left_matrix(x);
    let pi = u128::from(p).pow(i);
    let m = pi * u128::from(p);
    let lift: Vec<u128> = l.entries().iter().map(|e| u128::from(f.residue(e).expect("prime field"))).collect();
    let t = power_trace(&lift, d, p.pow(i), m);
    if t % pi != 0 {
        return Err(Error::RadicalVerificationFailed(format!(
            "trace of a {p}^{i}-th power is not divisible by {p}^{i}"
        )));
    }
    Ok(((t / pi) % u128::from(p)) as u64)
}

/// Whether the ideal spanned by `ideal` is nilpotent, by computing its powers.
pub fn is_nilpotent<F: Field>(a: &FiniteDimAlgebra<F>, ideal: &Subspace<F>) -> bool {
    let generators = ideal.basis().to_vec();
    let mut power = ideal.clone();
    loop {
        if power.dim() == 0 {
            return true;
        }
        let next = a.product_span(power.basis(), &generators);
        if next.dim() >= power.dim() {
            return false;
        }
        power = next;
    }
}

/// Basis of the Jacobson radical.
pub fn radical<F: Field>(a: &FiniteDimAlgebra<F>) -> Result<Subspace<F>> {
    let f = a.field();
    let d = a.dim();
    let mut ideal = Subspace::kernel(&trace_form(a));
    let p = f.spec().characteristic();
    if p != 0 && !is_nilpotent(a, &ideal) {
        let mut levels = 0u32;
        while (p as u128).pow(levels + 1) <= d as u128 {
            levels += 1;
        }
        for i in 1..=levels {
            ideal = refine(a, &ideal, p, i)?;
            if is_nilpotent(a, &ideal) {
                break;
            }
        }
    }
    if !is_nilpotent(a, &ideal) {
        return Err(Error::RadicalVerificationFailed(format!(
            "candidate radical of dimension {} is not nilpotent",
            ideal.dim()
        )));
    }
    Ok(ideal)
}

/// `I_i = {x ∈ I : g_i(x b) = 0 for every basis element b}`, using that
/// `g_i` is linear on the ideal `I`.
fn refine<F: Field>(a: &FiniteDimAlgebra<F>, ideal: &Subspace<F>, p: u64, i: u32) -> Result<Subspace<F>> {
    let f = a.field();
    let d = a.dim();
    let basis = ideal.basis().to_vec();
    let g: Vec<F::Elem> = par_map(&basis, |x| p_trace(a, x, p, i))
        .into_iter()
        .map(|r| r.map(|v| f.from_i64(v as i64)))
        .collect::<Result<_>>()?;
    // values[a][s] = g_i(x_a b_s)
    let rows: Vec<Vec<F::Elem>> = basis
        .iter()
        .map(|x| {
            (0..d)
                .map(|s| {
                    let coords = ideal.coordinates(&a.mul(x, &a.basis_vector(s))).ok_or_else(|| {
                        Error::RadicalVerificationFailed("candidate radical is not a right ideal".into())
                    })?;
                    let mut v = f.zero();
                    for (c, gv) in coords.iter().zip(&g) {
                        f.add_mul_assign(&mut v, c, gv);
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // λ with Σ_a λ_a values[a][s] = 0 for all s.
    let values = Matrix::from_rows(f, rows)?;
    let combos = values.transpose().kernel_basis();
    let vectors = combos.into_iter().map(|lambda| {
        let mut v = vec![f.zero(); d];
        for (c, x) in lambda.iter().zip(&basis) {
            if f.is_zero(c) {
                continue;
            }
            for (acc, y) in v.iter_mut().zip(x) {
                f.add_mul_assign(acc, c, y);
            }
        }
        v
    });
    Ok(Subspace::spanned_by(f, d, vectors))
}

/// `A / rad A` as a left module.
pub fn top_module<F: Field>(a: &FiniteDimAlgebra<F>, rad: &Subspace<F>) -> ModuleRep<F> {
    a.regular_module().quotient(rad.clone())
}
