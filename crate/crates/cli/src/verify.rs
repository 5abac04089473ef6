//! The verification suite: one check per acceptance criterion, each
//! reporting a single pass/fail line with the measured quantities.

use monoid_census::asymptotics::{constants, figure_series, totient_partial_sums};
use monoid_census::census::{self, psi_brute};
use monoid_census::inverse::totient_sieve;
use monoid_census::monoid::{convergents, matrix_to_word, word_to_matrix, CFWord};
use monoid_census::quadratics::{
    enumerate_reduced, gauss_orbit_check, lambda_consistency, r_of, sandwich_check_with,
    trace_power_census,
};

use crate::psi_sweeps_parallel;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Exact brute-force equivalence range.
    pub oracle_n: u64,
    /// Exact identity range.
    pub identity_n: u64,
    /// Main-term ratio checkpoint.
    pub theorem_n: u64,
    /// Scaled-residual sample points.
    pub residual_ns: Vec<u64>,
    /// Relative tolerance of the main-term ratio at `theorem_n`.
    pub tol: f64,
    /// Trace bound of the quadratic-irrational checks.
    pub quad_bound: u64,
    /// Negative control: offset added to `c2`, to prove the ratio check can
    /// fail. Zero in normal runs.
    pub perturb_c2: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            oracle_n: 500,
            identity_n: 2000,
            theorem_n: 20_000,
            residual_ns: vec![1000, 2000, 5000, 10_000, 20_000],
            tol: 0.02,
            quad_bound: 2000,
            perturb_c2: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        CheckResult { name, passed, detail }
    }

    pub fn line(&self) -> String {
        format!(
            "{}  {:<22} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Criterion: formula census equals brute-force word enumeration, exactly,
/// for every `N` up to `oracle_n`; includes the small spot values.
pub fn check_oracle(oracle_n: u64) -> CheckResult {
    let name = "oracle-equivalence";
    let (ev, odd) = match psi_sweeps_parallel(oracle_n) {
        Ok(s) => s,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    let brute = match psi_brute(oracle_n) {
        Ok(b) => b,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    let (mut be, mut bo) = (0u64, 0u64);
    for n in 3..=oracle_n {
        be += brute.phi_ba[n as usize];
        bo += brute.phi_bb[n as usize];
        if (ev[n as usize], odd[n as usize]) != (be, bo) {
            return CheckResult::new(
                name,
                false,
                format!(
                    "N={n}: formula (ev={}, odd={}) vs brute (ev={be}, odd={bo})",
                    ev[n as usize], odd[n as usize]
                ),
            );
        }
    }
    let spot = ev[3] + odd[3] == 1
        && ev[4] == 3
        && odd[4] == 1
        && 2 * (ev[4] + odd[4]) - 2 * (ev[3] + odd[3]) == 6;
    CheckResult::new(
        name,
        spot,
        format!("formula == brute for 3..={oracle_n}; psi(3)=2, psi(4)=8, phi(4)=6"),
    )
}

/// Criterion: `Psi = 2 Psi_ev + 2 Psi_odd` and the floor-sum form of
/// `Psi_odd` agrees with the closed form, exactly, for all `N <= identity_n`.
pub fn check_identities(identity_n: u64) -> CheckResult {
    let name = "identities";
    let (ev, odd) = match psi_sweeps_parallel(identity_n) {
        Ok(s) => s,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    let ev_f = census::psi_ev_formula_all(identity_n).unwrap();
    let odd_f = census::psi_odd_formula_all(identity_n).unwrap();
    let odd_fs = census::psi_odd_floorsum_all(identity_n).unwrap();
    for n in 3..=identity_n as usize {
        if ev[n] != ev_f[n] || odd[n] != odd_f[n] || odd_fs[n] != odd_f[n] {
            return CheckResult::new(
                name,
                false,
                format!(
                    "N={n}: sweep ({}, {}) formula ({}, {}) floorsum {}",
                    ev[n], odd[n], ev_f[n], odd_f[n], odd_fs[n]
                ),
            );
        }
    }
    CheckResult::new(
        name,
        true,
        format!("psi = 2(psi_ev + psi_odd) and floor-sum == closed form for 3..={identity_n}"),
    )
}

/// Criterion: main-term ratio at `theorem_n` within `tol`, plus the fitted
/// residual constant `max |psi0(N)| / N^1.75` over the sample points.
pub fn check_main_term(cfg: &VerifyConfig) -> CheckResult {
    let name = "main-term-ratio";
    let (ev, odd) = match psi_sweeps_parallel(cfg.theorem_n) {
        Ok(s) => s,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    let mut k = constants();
    k.c2 += cfg.perturb_c2;
    let mut fitted = 0.0f64;
    let mut ratio_dev = 0.0f64;
    for &n in &cfg.residual_ns {
        let i = n as usize;
        let row = census::census_row(n, ev[i], odd[i], 0, &k);
        fitted = fitted.max(row.residual_scaled.abs());
        if n == cfg.theorem_n {
            ratio_dev = (row.psi as f64 / row.main_term - 1.0).abs();
        }
    }
    let passed = ratio_dev <= cfg.tol;
    CheckResult::new(
        name,
        passed,
        format!(
            "|psi/main - 1| = {ratio_dev:.5} at N={} (tol {}); fitted residual constant {fitted:.4}",
            cfg.theorem_n, cfg.tol
        ),
    )
}

/// Criterion: `Psi_ev(N) / (N^2 log2 / (2 zeta(2)))` within 5% at `N = 10^4`.
pub fn check_even_ratio() -> CheckResult {
    let name = "even-class-ratio";
    let n = 10_000u64;
    let (ev, _) = match psi_sweeps_parallel(n) {
        Ok(s) => s,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    let k = constants();
    let main = (n * n) as f64 * k.log2 / (2.0 * k.zeta2);
    let dev = (ev[n as usize] as f64 / main - 1.0).abs();
    CheckResult::new(name, dev <= 0.05, format!("|psi_ev/main - 1| = {dev:.5} at N={n} (tol 0.05)"))
}

/// Criterion: `|S_N - C_N| <= 2N` for all `N <= 2*10^4`, with the largest
/// ratio reported.
pub fn check_figure_bound() -> CheckResult {
    let name = "s-minus-c-bound";
    let n_max = 20_000u64;
    let tot = totient_sieve(n_max / 2 + 1);
    let k = constants();
    let rows = match figure_series(n_max, &tot, &k) {
        Ok(r) => r,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    let mut worst = 0.0f64;
    let mut worst_n = 0u64;
    for r in &rows {
        let ratio = r.s_minus_c.abs() / (2.0 * r.n as f64);
        if ratio > worst {
            worst = ratio;
            worst_n = r.n;
        }
    }
    CheckResult::new(
        name,
        worst <= 1.0,
        format!("max |S_N - C_N| / 2N = {worst:.4} at N={worst_n} over N<={n_max}"),
    )
}

/// Criterion: the totient partial-sum asymptotic
/// `sum_(a<N) phi(a)/a^2 = (log N + gamma - zeta'(2)/zeta(2)) / zeta(2)
/// + O(log N / N)` with constant 10, at `N = 10^3, 10^4, 10^5`.
pub fn check_totient_sum() -> CheckResult {
    let name = "totient-partial-sum";
    let k = constants();
    let tot = totient_sieve(100_000);
    let mut detail = String::new();
    let mut passed = true;
    for n in [1000u64, 10_000, 100_000] {
        let s = totient_partial_sums(n, &tot).unwrap();
        let nf = n as f64;
        let limit = (nf.ln() + k.gamma - k.zeta2_prime / k.zeta2) / k.zeta2;
        let err = (s.sum_phi_over_a2 - limit).abs();
        let bound = 10.0 * nf.ln() / nf;
        passed &= err <= bound;
        detail.push_str(&format!("N={n}: err {err:.2e} <= {bound:.2e}; "));
    }
    CheckResult::new(name, passed, detail)
}

/// Criterion: quadratic-irrational invariants at trace bound `quad_bound` —
/// Pell identity and unit-matrix correspondence exact, Gauss-orbit product
/// to 1e-9 relative, exact counting bridge to `Psi_ev` for `N <= 200`,
/// sandwich inequalities for `10 <= N <= quad_bound`, and the two smallest
/// counter values.
pub fn check_quadratics(quad_bound: u64) -> CheckResult {
    let name = "quadratics";
    let qs = match enumerate_reduced(quad_bound) {
        Ok(qs) => qs,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    for q in &qs {
        let pell = q.u0 as i128 * q.u0 as i128 - q.delta as i128 * (q.v0 as i128 * q.v0 as i128);
        if pell != 4 {
            return CheckResult::new(name, false, format!("Pell failed at {:?}", q.period));
        }
        match lambda_consistency(q) {
            Ok(true) => {}
            _ => return CheckResult::new(name, false, format!("unit matrix mismatch at {:?}", q.period)),
        }
        match gauss_orbit_check(q, 1e-9) {
            Ok(true) => {}
            _ => return CheckResult::new(name, false, format!("Gauss orbit failed at {:?}", q.period)),
        }
    }
    let traces: Vec<u64> = {
        let mut t: Vec<u64> = qs.iter().map(|q| q.u0).collect();
        t.sort_unstable();
        t
    };
    for n in 3..=200u64 {
        let bridge = trace_power_census(&traces, n);
        let psi_ev = census::psi_ev_formula(n).unwrap();
        if bridge != psi_ev {
            return CheckResult::new(name, false, format!("bridge at N={n}: {bridge} vs {psi_ev}"));
        }
    }
    let (ev, _) = psi_sweeps_parallel(quad_bound + 1).unwrap();
    for n in 10..=quad_bound {
        let rep = sandwich_check_with(n, ev[n as usize], ev[n as usize + 1], &traces);
        if !rep.holds() {
            return CheckResult::new(name, false, format!("sandwich failed: {rep:?}"));
        }
    }
    let spots = r_of(3) == Ok(1) && r_of(4) == Ok(3);
    CheckResult::new(
        name,
        spots,
        format!(
            "{} units to trace {quad_bound}: Pell, unit matrix, Gauss orbit, bridge, sandwich ok; r(3)=1, r(4)=3",
            qs.len()
        ),
    )
}

/// Criterion: `r(N)` against its main term `N^2 log2 / (2 zeta(2))` within
/// 10% at `N = 2000`.
pub fn check_unit_count_ratio() -> CheckResult {
    let name = "unit-count-ratio";
    let n = 2000u64;
    let r = match r_of(n) {
        Ok(r) => r,
        Err(e) => return CheckResult::new(name, false, e.to_string()),
    };
    let k = constants();
    let main = (n * n) as f64 * k.log2 / (2.0 * k.zeta2);
    let dev = (r as f64 / main - 1.0).abs();
    CheckResult::new(name, dev <= 0.10, format!("|r/main - 1| = {dev:.5} at N={n} (tol 0.10)"))
}

/// Deterministic xorshift64* stream for the randomized structural checks.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Criterion: 10^4 random digit words (length <= 20, digits <= 10) pass the
/// alternating-determinant identity, the continuant reversal identity, and
/// the encode/decode round trip.
pub fn check_word_properties() -> CheckResult {
    let name = "word-properties";
    let mut rng = Rng(0x9E3779B97F4A7C15);
    for case in 0..10_000u32 {
        let len = 1 + rng.below(20) as usize;
        let digits: Vec<u64> = (0..len).map(|_| 1 + rng.below(10)).collect();
        let w = CFWord::new(digits).unwrap();
        let t = convergents(&w).unwrap();
        // p_{n-1} q_n - p_n q_{n-1} = (-1)^n
        let (mut pm, mut qm) = (1i128, 0i128);
        for i in 0..t.p.len() {
            let (p, q) = (t.p[i] as i128, t.q[i] as i128);
            let expect = if i % 2 == 0 { 1 } else { -1 };
            if pm * q - p * qm != expect {
                return CheckResult::new(name, false, format!("determinant at case {case}"));
            }
            pm = p;
            qm = q;
        }
        // q_{k-1}/q_k reverses the word
        let m = t.factor_matrix();
        let (mut num, mut den) = (0u64, 1u64);
        for &a in w.digits() {
            (num, den) = (den, a * den + num);
        }
        if (num, den) != (m.b, m.a) {
            return CheckResult::new(name, false, format!("reversal at case {case}"));
        }
        let enc = word_to_matrix(&w).unwrap();
        match matrix_to_word(&enc) {
            Ok(back) if back == w => {}
            _ => return CheckResult::new(name, false, format!("round trip at case {case}")),
        }
    }
    CheckResult::new(name, true, "10000 random words: determinant, reversal, round trip".into())
}

/// Run the whole suite in criterion order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckResult> {
    vec![
        check_oracle(cfg.oracle_n),
        check_identities(cfg.identity_n),
        check_main_term(cfg),
        check_even_ratio(),
        check_figure_bound(),
        check_totient_sum(),
        check_quadratics(cfg.quad_bound),
        check_unit_count_ratio(),
        check_word_properties(),
    ]
}
