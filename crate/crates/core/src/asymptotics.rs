//! Closed-form constants of the asymptotic law
//! `Psi(N) = c1 N^2 log N + c2 N^2 + Psi_0(N)` and the main-term series
//! `S_N`, `C_N`, totient partial sums, and the residual data series.

use alloc::vec::Vec;

use crate::inverse::TotientTable;
use crate::{Error, Result};

/// Euler-Mascheroni constant, 17 significant digits.
pub const GAMMA: f64 = 0.57721566490153286;
/// `zeta'(2)`, 17 significant digits.
///
/// Both literals are standard tabulated values; `zeta2_prime_series`
/// re-derives this one to 10+ digits by Euler-Maclaurin as a self-check.
pub const ZETA2_PRIME: f64 = -0.93754825431584376;

/// The constants of Theorem-level main terms, composed from the primitives.
#[derive(Debug, Clone, Copy)]
pub struct Constants {
    pub gamma: f64,
    pub zeta2: f64,
    pub zeta2_prime: f64,
    pub log2: f64,
    /// `c1 = 1/zeta(2)`.
    pub c1: f64,
    /// `c2 = (gamma - 3/2 - zeta'(2)/zeta(2)) / zeta(2)`.
    ///
    /// Composed from `2 Psi_ev ~ N^2 log2 / zeta(2)` and
    /// `2 Psi_odd ~ 2 C_N`: the `log 2` inside `C_N` cancels against the
    /// even-class term, so no `log 2` survives in `c2` itself.
    pub c2: f64,
}

pub fn constants() -> Constants {
    let zeta2 = core::f64::consts::PI * core::f64::consts::PI / 6.0;
    let log2 = core::f64::consts::LN_2;
    let c1 = 1.0 / zeta2;
    let c2 = (GAMMA - 1.5 - ZETA2_PRIME / zeta2) / zeta2;
    Constants { gamma: GAMMA, zeta2, zeta2_prime: ZETA2_PRIME, log2, c1, c2 }
}

/// `zeta'(2) = -sum log n / n^2` by direct summation to `m` terms plus
/// Euler-Maclaurin tail corrections; 10+ digits for `m >= 1000`.
pub fn zeta2_prime_series(m: u64) -> f64 {
    let mut acc = Kahan::new();
    for n in 2..m {
        let nf = n as f64;
        acc.add(libm::log(nf) / (nf * nf));
    }
    let mf = m as f64;
    let lm = libm::log(mf);
    // integral + f(M)/2 - f'(M)/12 + f'''(M)/720 for f(x) = log x / x^2
    let tail = (lm + 1.0) / mf + lm / (2.0 * mf * mf) - (1.0 - 2.0 * lm) / (12.0 * mf * mf * mf)
        + (26.0 - 24.0 * lm) / (720.0 * mf * mf * mf * mf * mf);
    -(acc.sum() + tail)
}

/// Compensated (Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    s: f64,
    c: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Kahan::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.s + y;
        self.c = (t - self.s) - y;
        self.s = t;
    }

    pub fn sum(&self) -> f64 {
        self.s
    }
}

/// `S_N = sum_{a < N/2} phi(a) (N - 2a)^2 / (2 a^2)`, compensated.
pub fn s_n(n: u64, tot: &TotientTable) -> f64 {
    let mut acc = Kahan::new();
    let mut a = 1u64;
    while 2 * a < n {
        let d = (n - 2 * a) as f64;
        acc.add(tot.phi(a) as f64 * d * d / (2.0 * (a * a) as f64));
        a += 1;
    }
    acc.sum()
}

/// `C_N = N^2/(2 zeta(2)) (log N + gamma - log 2 - 3/2 - zeta'(2)/zeta(2))`.
pub fn c_n(n: u64, k: &Constants) -> f64 {
    let nf = n as f64;
    nf * nf / (2.0 * k.zeta2)
        * (libm::log(nf) + k.gamma - k.log2 - 1.5 - k.zeta2_prime / k.zeta2)
}

#[derive(Debug, Clone, Copy)]
pub struct PartialSums {
    pub sum_phi: u64,
    pub sum_phi_over_a: f64,
    pub sum_phi_over_a2: f64,
}

/// The three partial sums over `a < n` (strict).
pub fn totient_partial_sums(n: u64, tot: &TotientTable) -> Result<PartialSums> {
    if n < 2 {
        return Err(Error::BadArgument("totient_partial_sums requires n >= 2"));
    }
    let mut sum_phi = 0u64;
    let mut s1 = Kahan::new();
    let mut s2 = Kahan::new();
    for a in 1..n {
        let p = tot.phi(a);
        sum_phi += p;
        s1.add(p as f64 / a as f64);
        s2.add(p as f64 / (a * a) as f64);
    }
    Ok(PartialSums { sum_phi, sum_phi_over_a: s1.sum(), sum_phi_over_a2: s2.sum() })
}

#[derive(Debug, Clone, Copy)]
pub struct FigureRow {
    pub n: u64,
    pub s_n: f64,
    pub c_n: f64,
    pub s_minus_c: f64,
    /// `sum_{a<N/2} phi(a)(N - 2a)/a - N^2/(4 zeta(2))`.
    pub fig2: f64,
}

/// Per-N series behind the residual plots, streamed with O(1) incremental
/// updates from the partial sums over `a < N/2`.
pub fn figure_series(n_max: u64, tot: &TotientTable, k: &Constants) -> Result<Vec<FigureRow>> {
    if n_max < 3 {
        return Err(Error::BadArgument("figure_series requires n_max >= 3"));
    }
    let mut rows = Vec::with_capacity(n_max as usize - 2);
    let mut sum_phi = 0u64; // sum of phi(a), a < N/2
    let mut s1 = Kahan::new(); // sum of phi(a)/a
    let mut s2 = Kahan::new(); // sum of phi(a)/a^2
    let mut a_next = 1u64;
    for n in 3..=n_max {
        while 2 * a_next < n {
            let p = tot.phi(a_next);
            sum_phi += p;
            s1.add(p as f64 / a_next as f64);
            s2.add(p as f64 / (a_next * a_next) as f64);
            a_next += 1;
        }
        let nf = n as f64;
        // (N - 2a)^2 / 2 expanded over the partial sums
        let s = 0.5 * (nf * nf * s2.sum() - 4.0 * nf * s1.sum() + 4.0 * sum_phi as f64);
        let c = c_n(n, k);
        let fig2 = nf * s1.sum() - 2.0 * sum_phi as f64 - nf * nf / (4.0 * k.zeta2);
        rows.push(FigureRow { n, s_n: s, c_n: c, s_minus_c: s - c, fig2 });
    }
    Ok(rows)
}
