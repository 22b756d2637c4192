//! Jacobi polynomials ℙ_m^{γ,δ}(y) for arbitrary real γ, δ.

/// ℙ_m^{γ,δ}(y) via the three-term recurrence, falling back to the explicit
/// sum when the recurrence degenerates (e.g. γ+δ+n = 0).
pub fn jacobi_poly(m: u32, g: f64, d: f64, y: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let p1 = (g + 1.0) + (g + d + 2.0) * (y - 1.0) / 2.0;
    if m == 1 {
        return p1;
    }
    let mut pm2 = 1.0;
    let mut pm1 = p1;
    for n in 2..=m {
        let nf = n as f64;
        let s = 2.0 * nf + g + d;
        let lead = 2.0 * nf * (nf + g + d) * (s - 2.0);
        if lead.abs() < 1e-8 * (2.0 * nf * s.abs().max(1.0) * (s - 2.0).abs().max(1.0)) {
            return jacobi_sum(m, g, d, y);
        }
        let p = ((s - 1.0) * (s * (s - 2.0) * y + g * g - d * d) * pm1
            - 2.0 * (nf + g - 1.0) * (nf + d - 1.0) * s * pm2)
            / lead;
        pm2 = pm1;
        pm1 = p;
    }
    pm1
}

/// Σ_k (m+γ+δ+1)_k (γ+k+1)_{m−k} / (k!(m−k)!) ((y−1)/2)^k.
pub fn jacobi_sum(m: u32, g: f64, d: f64, y: f64) -> f64 {
    let w = (y - 1.0) / 2.0;
    let mut sum = 0.0;
    let mut rise_k = 1.0; // (m+γ+δ+1)_k / k!
    let mut wk = 1.0;
    for k in 0..=m {
        let mut tail = 1.0; // (γ+k+1)_{m−k} / (m−k)!
        for j in 0..(m - k) {
            tail *= (g + k as f64 + 1.0 + j as f64) / (j as f64 + 1.0);
        }
        sum += rise_k * tail * wk;
        rise_k *= (m as f64 + g + d + 1.0 + k as f64) / (k as f64 + 1.0);
        wk *= w;
    }
    sum
}
