//! Reduced (purely periodic) quadratic irrationals: minimal polynomials,
//! discriminants, Pell fundamental units `eps0 = (u0 + v0 sqrt(D))/2` with
//! `u0^2 - D v0^2 = 4`, lengths `rho = 2 log eps0`, and the counters `r(N)`
//! and `pi0(X)` together with the sandwich inequalities that tie them to
//! `Psi_ev`.

use alloc::vec::Vec;

use crate::census;
use crate::monoid::{convergents, mat_mul, CFWord, Mat2};
use crate::{Error, Result};

/// A reduced quadratic irrational `omega = [overline(a1..an)]`.
///
/// `m` is the factor product `M(a1)...M(an)`; `m_tilde` is `m` for even
/// period and `m^2` for odd period, so that `Tr(m_tilde) = u0` and `eps0`
/// is the spectral radius of `m_tilde`.
#[derive(Debug, Clone)]
pub struct QuadIrr {
    pub period: CFWord,
    pub per: usize,
    pub eper: usize,
    pub m: Mat2,
    pub m_tilde: Mat2,
    /// Minimal polynomial `A x^2 + B x + C` with `A > 0`, content 1.
    pub poly_a: u64,
    pub poly_b: i64,
    pub poly_c: i64,
    /// Discriminant `B^2 - 4AC > 0`, not a square.
    pub delta: u64,
    pub u0: u64,
    pub v0: u64,
    /// `rho = 2 log eps0`.
    pub rho: f64,
}

impl QuadIrr {
    /// Numeric value of `omega = (-B + sqrt(D)) / (2A)`, in `(0, 1)`.
    pub fn omega(&self) -> f64 {
        (-(self.poly_b as f64) + libm::sqrt(self.delta as f64)) / (2.0 * self.poly_a as f64)
    }

    /// Galois conjugate `(-B - sqrt(D)) / (2A)`, below `-1`.
    pub fn conjugate(&self) -> f64 {
        (-(self.poly_b as f64) - libm::sqrt(self.delta as f64)) / (2.0 * self.poly_a as f64)
    }

    pub fn eps0(&self) -> f64 {
        (self.u0 as f64 + self.v0 as f64 * libm::sqrt(self.delta as f64)) / 2.0
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Construct the full invariant set of a primitive period.
///
/// The fixed-point relation of the continued-fraction shift gives the
/// quadratic `q_{n-1} w^2 + (q_n - p_{n-1}) w - p_n = 0`, normalized to
/// content 1 with positive leading coefficient. `v0` is read off the
/// top-right entry of `m_tilde` divided by `A` (the lambda correspondence,
/// validated integral), and the Pell identity is checked exactly.
pub fn build_quad_irr(period: &CFWord) -> Result<QuadIrr> {
    if !period.is_primitive() {
        return Err(Error::NonPrimitivePeriod);
    }
    let per = period.len();
    let t = convergents(period)?;
    let m = t.factor_matrix();
    let (m_tilde, eper) = if per % 2 == 0 { (m, per) } else { (mat_mul(&m, &m)?, 2 * per) };

    // fixed-point quadratic, before content division
    let raw_a = m.b as i128; // q_{n-1}
    let raw_b = m.a as i128 - m.d as i128; // q_n - p_{n-1}
    let raw_c = -(m.c as i128); // -p_n
    let g = gcd(gcd(raw_a.unsigned_abs() as u64, raw_b.unsigned_abs() as u64),
        raw_c.unsigned_abs() as u64) as i128;
    let (a128, b128, c128) = (raw_a / g, raw_b / g, raw_c / g);
    let poly_a = u64::try_from(a128).map_err(|_| Error::Overflow { op: "minimal polynomial" })?;
    let poly_b = i64::try_from(b128).map_err(|_| Error::Overflow { op: "minimal polynomial" })?;
    let poly_c = i64::try_from(c128).map_err(|_| Error::Overflow { op: "minimal polynomial" })?;

    let delta128 = b128 * b128 - 4 * a128 * c128;
    let delta = u64::try_from(delta128).map_err(|_| Error::Overflow { op: "discriminant" })?;
    if delta == 0 || isqrt(delta) * isqrt(delta) == delta {
        return Err(Error::InvariantViolation("discriminant must be positive and non-square"));
    }

    // reduced: 0 < omega < 1 and conjugate < -1, checked exactly
    let bb = poly_b as i128;
    let aa = poly_a as i128;
    if delta128 <= bb * bb {
        return Err(Error::InvariantViolation("omega must be positive"));
    }
    let two_a_plus_b = 2 * aa + bb;
    if two_a_plus_b <= 0 || delta128 >= two_a_plus_b * two_a_plus_b {
        return Err(Error::InvariantViolation("omega must be below 1"));
    }
    let two_a_minus_b = 2 * aa - bb;
    if two_a_minus_b > 0 && delta128 <= two_a_minus_b * two_a_minus_b {
        return Err(Error::InvariantViolation("conjugate must be below -1"));
    }

    let u0 = m_tilde.trace()?;
    if m_tilde.b % poly_a != 0 {
        return Err(Error::InvariantViolation("v0 is not integral"));
    }
    let v0 = m_tilde.b / poly_a;
    // Pell identity, exact
    let pell = u0 as i128 * u0 as i128 - delta as i128 * (v0 as i128 * v0 as i128);
    if pell != 4 {
        return Err(Error::InvariantViolation("Pell identity u0^2 - D v0^2 = 4 failed"));
    }
    let rho = 2.0 * libm::log((u0 as f64 + v0 as f64 * libm::sqrt(delta as f64)) / 2.0);
    Ok(QuadIrr {
        period: period.clone(),
        per,
        eper,
        m,
        m_tilde,
        poly_a,
        poly_b,
        poly_c,
        delta,
        u0,
        v0,
        rho,
    })
}

/// Check the Gauss-orbit product identity in the reciprocal convention:
/// `omega T(omega) ... T^{eper-1}(omega) = 1 / eps0`.
///
/// The Gauss map `T(x) = 1/x - floor(1/x)` is iterated numerically; each
/// emitted digit is compared against the expected rotation of the period and
/// any divergence is reported as an error rather than silently compared.
pub fn gauss_orbit_check(q: &QuadIrr, tol: f64) -> Result<bool> {
    let digits = q.period.digits();
    let n = digits.len();
    let mut x = q.omega();
    let mut product = 1.0f64;
    for step in 0..q.eper {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::InvariantViolation("Gauss orbit left (0,1)"));
        }
        product *= x;
        if step + 1 < q.eper {
            let inv = 1.0 / x;
            let digit = libm::floor(inv) as u64;
            if digit != digits[step % n] {
                return Err(Error::InvariantViolation("Gauss orbit digit diverged from the period"));
            }
            x = inv - digit as f64;
        }
    }
    let expected = 1.0 / q.eps0();
    Ok(libm::fabs(product - expected) <= tol * expected)
}

/// Rebuild `m_tilde` from `(u0, v0, A, B, C)` through the inverse of the
/// unit isomorphism and compare entrywise (after the orientation flip
/// between the word layout and the fixed-point layout), together with the
/// trace and norm identities.
pub fn lambda_consistency(q: &QuadIrr) -> Result<bool> {
    let u = q.u0 as i128;
    let v = q.v0 as i128;
    let b = q.poly_b as i128;
    if (u - b * v) % 2 != 0 {
        return Err(Error::InvariantViolation("(u - B v)/2 is not integral"));
    }
    let tl = (u - b * v) / 2;
    let tr = -(q.poly_c as i128) * v;
    let bl = q.poly_a as i128 * v;
    let br = (u + b * v) / 2;
    // orientation: the lambda-layout matrix is J * m_tilde * J
    let flipped = q.m_tilde.flip();
    let entries_ok = tl == flipped.a as i128
        && tr == flipped.b as i128
        && bl == flipped.c as i128
        && br == flipped.d as i128;
    let trace_ok = tl + br == q.u0 as i128;
    let det_ok = q.m_tilde.det() == 1;
    Ok(entries_ok && trace_ok && det_ok)
}

/// Trace of `m_tilde^k` from `u0` by `t_k = u0 t_{k-1} - t_{k-2}`;
/// `None` means the value exceeds `u128`, i.e. larger than any desk bound.
fn power_trace(u0: u64, k: u32) -> Option<u128> {
    let mut t_prev: u128 = 2;
    let mut t = u0 as u128;
    for _ in 1..k {
        let next = (u0 as u128).checked_mul(t)?.checked_sub(t_prev)?;
        t_prev = t;
        t = next;
    }
    Some(t)
}

/// Visit every reduced quadratic irrational with `Tr(m_tilde) <= trace_bound`
/// exactly once, in depth-first digit order.
///
/// The DFS over digit strings is pruned on the continuant `q_n`, which never
/// decreases and bounds the trace from below; non-primitive periods are
/// skipped. For odd periods the squared-matrix trace `t^2 + 2` applies
/// (the factor product of odd length has determinant -1).
pub fn for_each_reduced<F>(trace_bound: u64, f: &mut F) -> Result<()>
where
    F: FnMut(QuadIrr) -> Result<()>,
{
    if trace_bound < 3 {
        return Err(Error::BadArgument("enumeration requires trace_bound >= 3"));
    }

    fn dfs<F>(
        digits: &mut Vec<u64>,
        // (q_n, q_{n-1}, p_n, p_{n-1})
        state: (u64, u64, u64, u64),
        bound: u64,
        f: &mut F,
    ) -> Result<()>
    where
        F: FnMut(QuadIrr) -> Result<()>,
    {
        let (q, q_prev, p, p_prev) = state;
        for a in 1u64.. {
            let Some(qn) = a.checked_mul(q).and_then(|v| v.checked_add(q_prev)) else { break };
            if qn > bound {
                break;
            }
            let pn = a * p + p_prev;
            digits.push(a);
            let t = qn + p;
            let u0 = if digits.len() % 2 == 0 {
                Some(t)
            } else {
                t.checked_mul(t).and_then(|v| v.checked_add(2))
            };
            if let Some(u0) = u0 {
                if u0 <= bound {
                    let word = CFWord::new(digits.clone())?;
                    if word.is_primitive() {
                        f(build_quad_irr(&word)?)?;
                    }
                }
            }
            dfs(digits, (qn, q, pn, p), bound, f)?;
            digits.pop();
        }
        Ok(())
    }

    let mut digits = Vec::new();
    dfs(&mut digits, (1, 0, 0, 1), trace_bound, f)
}

/// All reduced quadratic irrationals with `Tr(m_tilde) <= trace_bound`,
/// sorted by `(u0, period)`.
pub fn enumerate_reduced(trace_bound: u64) -> Result<Vec<QuadIrr>> {
    let mut out = Vec::new();
    for_each_reduced(trace_bound, &mut |q| {
        out.push(q);
        Ok(())
    })?;
    out.sort_by(|x, y| {
        x.u0.cmp(&y.u0).then_with(|| x.period.digits().cmp(y.period.digits()))
    });
    Ok(out)
}

/// Sorted multiset of fundamental traces `u0` up to the bound.
pub fn fundamental_traces(trace_bound: u64) -> Result<Vec<u64>> {
    let mut traces = Vec::new();
    for_each_reduced(trace_bound, &mut |q| {
        traces.push(q.u0);
        Ok(())
    })?;
    traces.sort_unstable();
    Ok(traces)
}

/// `#\{omega : eps0(omega)^k < num/den\}` over a sorted trace list, decided by
/// the exact integer criterion `t_k * num * den < num^2 + den^2`
/// (`eps < Y  iff  eps + 1/eps < Y + 1/Y` for `eps, Y >= 1`).
pub fn count_eps_pow_below(traces: &[u64], k: u32, num: u64, den: u64) -> u64 {
    debug_assert!(num > den && den >= 1);
    let rhs = num as u128 * num as u128 + den as u128 * den as u128;
    let nd = num as u128 * den as u128;
    let below = |u0: u64| match power_trace(u0, k) {
        Some(t) => t.checked_mul(nd).map(|l| l < rhs).unwrap_or(false),
        None => false,
    };
    // t_k is increasing in u0: binary search the largest admissible trace
    let (mut lo, mut hi) = (2u64, traces.last().copied().unwrap_or(2));
    // invariant: below(lo) || lo == 2 sentinel; !below(hi+1)
    if !below(hi) {
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if below(mid + 1) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
    } else {
        lo = hi;
    }
    let cutoff = lo; // largest u0 with eps^k < num/den (2 means none)
    traces.partition_point(|&t| t <= cutoff) as u64
}

/// `r(N) = #\{omega : eps0 < N\}` for integer `N >= 3`, exact.
pub fn r_of(n: u64) -> Result<u64> {
    if n < 3 {
        return Ok(0);
    }
    // eps0 < N  iff  u0 <= N for integer N
    let traces = fundamental_traces(n)?;
    Ok(traces.len() as u64)
}

/// `pi0(X) = #\{omega : rho(omega) < X\}`, i.e. `eps0 < e^{X/2}`.
///
/// The float cut `Y + 1/Y` on integer traces is rejected when it falls within
/// floating error of an integer; integer bounds should go through [`r_of`].
pub fn pi0(x_bound: f64) -> Result<u64> {
    if !(x_bound > 0.0) {
        return Err(Error::BadArgument("pi0 requires a positive bound"));
    }
    let y = libm::exp(x_bound / 2.0);
    let threshold = y + 1.0 / y; // u0 < threshold
    let nearest = libm::round(threshold);
    if libm::fabs(threshold - nearest) < 1e-9 * threshold.max(1.0) {
        return Err(Error::BoundaryAmbiguity);
    }
    let cutoff = libm::floor(threshold) as u64;
    if cutoff < 3 {
        return Ok(0);
    }
    let traces = fundamental_traces(cutoff)?;
    Ok(traces.len() as u64)
}

/// `sum_k #\{omega : Tr(m_tilde^k) <= n\}`, the left side of the counting
/// bridge with `Psi_ev(n)`.
pub fn trace_power_census(traces: &[u64], n: u64) -> u64 {
    let mut total = 0u64;
    for &u0 in traces {
        if u0 > n {
            break;
        }
        let mut k = 1u32;
        while power_trace(u0, k).map(|t| t <= n as u128).unwrap_or(false) {
            total += 1;
            k += 1;
        }
    }
    total
}

#[derive(Debug, Clone, Copy)]
pub struct SandwichReport {
    pub n: u64,
    /// `sum_k r((N - 1/2)^{1/k})`.
    pub lower: u64,
    pub psi_ev: u64,
    /// `sum_k r(N^{1/k})`.
    pub upper: u64,
    pub r_n: u64,
    pub psi_ev_next: u64,
}

impl SandwichReport {
    /// The sandwich inequalities plus `r(N) < Psi_ev(N+1)`.
    ///
    /// The upper bracket is asserted non-strictly: at integer `N` the cuts
    /// `eps^k < N` and `Tr <= N` select exactly the same pairs (for an
    /// integer trace `t`, `t <= N` iff `t < N + 1/N`), so the upper sum
    /// equals `psi_ev` identically and only the real-argument version of the
    /// bound is strict.
    pub fn holds(&self) -> bool {
        self.lower < self.psi_ev && self.psi_ev <= self.upper && self.r_n < self.psi_ev_next
    }
}

/// Evaluate the sandwich inequalities with everything precomputed: the sums
/// run over `1 <= k <= 2 log N`.
pub fn sandwich_check_with(
    n: u64,
    psi_ev: u64,
    psi_ev_next: u64,
    traces: &[u64],
) -> SandwichReport {
    let k_max = libm::floor(2.0 * libm::log(n as f64)) as u32;
    let mut lower = 0u64;
    let mut upper = 0u64;
    for k in 1..=k_max {
        // (N - 1/2)^{1/k}: eps^k < (2N-1)/2
        lower += count_eps_pow_below(traces, k, 2 * n - 1, 2);
        upper += count_eps_pow_below(traces, k, n, 1);
    }
    let r_n = traces.partition_point(|&t| t <= n) as u64;
    SandwichReport { n, lower, psi_ev, upper, r_n, psi_ev_next }
}

/// Standalone sandwich check at a single `n`, computing its own census
/// values and trace list.
pub fn sandwich_check(n: u64) -> Result<SandwichReport> {
    if n < 3 {
        return Err(Error::BadArgument("sandwich_check requires n >= 3"));
    }
    let traces = fundamental_traces(n)?;
    let psi_ev = census::psi_ev_formula(n)?;
    let psi_ev_next = census::psi_ev_formula(n + 1)?;
    Ok(sandwich_check_with(n, psi_ev, psi_ev_next, &traces))
}
