//! The trace census: Phi(N) and Psi(N) for products of `A` and `B`, computed
//! both by exhaustive word enumeration (the oracle) and by the exact
//! modular-inverse region formulas
//! `Psi_ev(N) = sum_q N_q(Omega_{N,q})`, `Psi_odd(N) = sum_a N_a(T~_{N,a})`.

use alloc::vec;
use alloc::vec::Vec;

use crate::asymptotics::{self, Constants};
use crate::inverse::{count_inverse_pairs, count_inverse_pairs_with, InverseTable, Region};
use crate::monoid::{mat_mul, Mat2, GEN_A, GEN_B};
use crate::{Error, Result};

/// Exhaustive-enumeration census, split by the four start/end letter classes.
#[derive(Debug, Clone)]
pub struct BruteCensus {
    pub n_max: u64,
    /// phi histograms per class, indexed by trace: B..A, B..B, A..B, A..A.
    pub phi_ba: Vec<u64>,
    pub phi_bb: Vec<u64>,
    pub phi_ab: Vec<u64>,
    pub phi_aa: Vec<u64>,
}

impl BruteCensus {
    pub fn phi(&self, n: u64) -> u64 {
        let i = n as usize;
        self.phi_ba[i] + self.phi_bb[i] + self.phi_ab[i] + self.phi_aa[i]
    }

    pub fn psi(&self, n: u64) -> u64 {
        (3..=n).map(|k| self.phi(k)).sum()
    }

    /// Cumulative count of B..A words, the class counted by `Psi_ev`.
    pub fn psi_ev(&self, n: u64) -> u64 {
        (3..=n).map(|k| self.phi_ba[k as usize]).sum()
    }

    /// Cumulative count of B..B words, the class counted by `Psi_odd`.
    pub fn psi_odd(&self, n: u64) -> u64 {
        (3..=n).map(|k| self.phi_bb[k as usize]).sum()
    }
}

/// Depth-first enumeration of all nonempty words over `{A, B}` with trace at
/// most `n_max`, counted once each (unique factorization).
///
/// Entries never decrease under right-multiplication, so for a mixed word the
/// trace of every descendant is at least the trace of the child it passes
/// through: recurse into a child iff its trace fits. Pure powers `A^k`, `B^k`
/// keep trace 2 forever; their first mixed descendant has trace `k + 2`,
/// which bounds that chain instead.
pub fn psi_brute(n_max: u64) -> Result<BruteCensus> {
    if n_max < 3 {
        return Err(Error::BadArgument("psi_brute requires n_max >= 3"));
    }
    if n_max > 20_000 {
        return Err(Error::BadArgument("psi_brute is meant for desk scale (n_max <= 20000)"));
    }
    let mut census = BruteCensus {
        n_max,
        phi_ba: vec![0; n_max as usize + 1],
        phi_bb: vec![0; n_max as usize + 1],
        phi_ab: vec![0; n_max as usize + 1],
        phi_aa: vec![0; n_max as usize + 1],
    };

    #[derive(Clone, Copy, PartialEq)]
    enum Letter {
        A,
        B,
    }

    fn gen(l: Letter) -> &'static Mat2 {
        match l {
            Letter::A => &GEN_A,
            Letter::B => &GEN_B,
        }
    }

    fn visit(
        m: &Mat2,
        first: Letter,
        last: Letter,
        pure_exp: Option<u64>,
        n_max: u64,
        census: &mut BruteCensus,
    ) -> Result<()> {
        if pure_exp.is_none() {
            let tr = m.trace()?;
            debug_assert!(tr >= 3);
            let hist = match (first, last) {
                (Letter::B, Letter::A) => &mut census.phi_ba,
                (Letter::B, Letter::B) => &mut census.phi_bb,
                (Letter::A, Letter::B) => &mut census.phi_ab,
                (Letter::A, Letter::A) => &mut census.phi_aa,
            };
            hist[tr as usize] += 1;
        }
        for next in [Letter::A, Letter::B] {
            let child = mat_mul(m, gen(next))?;
            let descend = match pure_exp {
                Some(e) if next == last => e + 3 <= n_max, // still pure, exponent e + 1
                _ => child.trace()? <= n_max,
            };
            if descend {
                let child_pure = match pure_exp {
                    Some(e) if next == last => Some(e + 1),
                    _ => None,
                };
                visit(&child, first, next, child_pure, n_max, census)?;
            }
        }
        Ok(())
    }

    for l in [Letter::A, Letter::B] {
        visit(gen(l), l, l, Some(1), n_max, &mut census)?;
    }
    Ok(census)
}

/// `Psi_ev(N)` by the region formula: the trapezoid for `q <= N/2`, the
/// triangle for `q > N/2`.
pub fn psi_ev_formula(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::BadArgument("psi_ev_formula requires n >= 3"));
    }
    let mut total = 0u64;
    for q in 1..n {
        let region = if 2 * q <= n {
            Region::trapezoid_ev(n, q)?
        } else {
            Region::triangle_ev(n, q)?
        };
        total += count_inverse_pairs(q, &region);
    }
    Ok(total)
}

/// `Psi_odd(N) = sum_{a < N/2} N_a(T~_{N,a})`.
pub fn psi_odd_formula(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::BadArgument("psi_odd_formula requires n >= 3"));
    }
    let mut total = 0u64;
    let mut a = 1;
    while 2 * a < n {
        total += count_inverse_pairs(a, &Region::triangle_odd(n, a)?);
        a += 1;
    }
    Ok(total)
}

/// `Psi_ev(N)` for every `3 <= N <= n_max` (index by `N`), amortizing one
/// inverse table per modulus across all `N`.
pub fn psi_ev_formula_all(n_max: u64) -> Result<Vec<u64>> {
    if n_max < 3 {
        return Err(Error::BadArgument("psi_ev_formula_all requires n_max >= 3"));
    }
    let mut out = vec![0u64; n_max as usize + 1];
    for q in 1..n_max {
        let table = InverseTable::new(q);
        for n in (q + 1).max(3)..=n_max {
            let region = if 2 * q <= n {
                Region::trapezoid_ev(n, q)?
            } else {
                Region::triangle_ev(n, q)?
            };
            out[n as usize] += count_inverse_pairs_with(&table, &region);
        }
    }
    Ok(out)
}

/// `Psi_odd(N)` for every `3 <= N <= n_max`, region form, one table per
/// modulus.
pub fn psi_odd_formula_all(n_max: u64) -> Result<Vec<u64>> {
    if n_max < 3 {
        return Err(Error::BadArgument("psi_odd_formula_all requires n_max >= 3"));
    }
    let mut out = vec![0u64; n_max as usize + 1];
    let mut a = 1u64;
    while 2 * a < n_max {
        let table = InverseTable::new(a);
        for n in (2 * a + 1).max(3)..=n_max {
            out[n as usize] += count_inverse_pairs_with(&table, &Region::triangle_odd(n, a)?);
        }
        a += 1;
    }
    Ok(out)
}

/// Floor-sum `Psi_odd(N)` for every `3 <= N <= n_max`, one table per
/// modulus.
pub fn psi_odd_floorsum_all(n_max: u64) -> Result<Vec<u64>> {
    if n_max < 3 {
        return Err(Error::BadArgument("psi_odd_floorsum_all requires n_max >= 3"));
    }
    let mut out = vec![0u64; n_max as usize + 1];
    let mut a = 1u64;
    while 2 * a < n_max {
        let table = InverseTable::new(a);
        for n in 2 * a + 1..=n_max {
            for y in a + 1..=n - a {
                let Some(x) = table.rep(y as i64) else { continue };
                if x + y <= n {
                    out[n as usize] += (n - y - x) / a;
                }
            }
        }
        a += 1;
    }
    Ok(out)
}

/// Direct floor-sum form of `Psi_odd(N)`:
/// `sum_{a<N/2} sum_{a<y<=N-a, x = y^{-1} mod a, x<=a} floor((N-y-x)/a)`.
///
/// Identically equal to [`psi_odd_formula`]; the region form is obtained from
/// this one by exact lattice surgery, not estimation.
pub fn psi_odd_floorsum(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::BadArgument("psi_odd_floorsum requires n >= 3"));
    }
    let mut total = 0u64;
    let mut a = 1u64;
    while 2 * a < n {
        let table = InverseTable::new(a);
        for y in a + 1..=n - a {
            let Some(x) = table.rep(y as i64) else { continue };
            if x + y <= n {
                total += (n - y - x) / a;
            }
        }
        a += 1;
    }
    Ok(total)
}

/// Adds to `hist[s]` the number of even-class matrices with modulus `q` and
/// trace exactly `s`, for all `s <= n_max`.
///
/// Follows (the parameterization behind) the census formula: every pair
/// `q < y <= N` coprime to `q` carries the unique inverse `x in (0, q]` and
/// contributes at trace `s = y + x`.
pub fn psi_ev_hist_for_modulus(q: u64, n_max: u64, hist: &mut [u64]) {
    let table = InverseTable::new(q);
    for y in q + 1..=n_max {
        let Some(x) = table.rep(y as i64) else { continue };
        let s = y + x;
        if s <= n_max {
            hist[s as usize] += 1;
        }
    }
}

/// Adds to `hist[s]` the number of odd-class matrices with lower-left entry
/// `a` and trace exactly `s`, for all `s <= n_max`.
///
/// Parameterization: coprime pairs `a < q` with `x = q^{-1} mod a in (0, a]`
/// contribute at traces `s = q + x + a*t` for every `t >= 1`.
pub fn psi_odd_hist_for_modulus(a: u64, n_max: u64, hist: &mut [u64]) {
    let table = InverseTable::new(a);
    for q in a + 1..=n_max {
        if q + 1 + a > n_max {
            break;
        }
        let Some(x) = table.rep(q as i64) else { continue };
        let mut s = q + x + a;
        while s <= n_max {
            hist[s as usize] += 1;
            s += a;
        }
    }
}

/// Cumulative `Psi_ev` and `Psi_odd` for every `N <= n_max`, in one sweep.
pub fn psi_sweeps(n_max: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    if n_max < 3 {
        return Err(Error::BadArgument("psi_sweeps requires n_max >= 3"));
    }
    let mut ev = vec![0u64; n_max as usize + 1];
    let mut odd = vec![0u64; n_max as usize + 1];
    for q in 1..n_max {
        psi_ev_hist_for_modulus(q, n_max, &mut ev);
    }
    let mut a = 1;
    while 2 * a < n_max {
        psi_odd_hist_for_modulus(a, n_max, &mut odd);
        a += 1;
    }
    for s in 3..=n_max as usize {
        ev[s] += ev[s - 1];
        odd[s] += odd[s - 1];
    }
    Ok((ev, odd))
}

/// One row of the census table.
#[derive(Debug, Clone, Copy)]
pub struct CensusRow {
    pub n: u64,
    pub psi_ev: u64,
    pub psi_odd: u64,
    pub psi: u64,
    pub phi: u64,
    /// `c1 N^2 log N + c2 N^2`.
    pub main_term: f64,
    /// `Psi_0(N) = Psi(N) - main_term`.
    pub residual: f64,
    /// `residual / N^{7/4}`.
    pub residual_scaled: f64,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn row(&self, n: u64) -> &CensusRow {
        &self.rows[n as usize - 3]
    }
}

/// Build a census row from sweep values and the main-term constants.
pub fn census_row(n: u64, psi_ev: u64, psi_odd: u64, psi_prev: u64, k: &Constants) -> CensusRow {
    let psi = 2 * (psi_ev + psi_odd);
    let nf = n as f64;
    let main_term = k.c1 * nf * nf * libm::log(nf) + k.c2 * nf * nf;
    let residual = psi as f64 - main_term;
    CensusRow {
        n,
        psi_ev,
        psi_odd,
        psi,
        phi: psi - psi_prev,
        main_term,
        residual,
        residual_scaled: residual / libm::pow(nf, 1.75),
    }
}

/// Full census table for `N = 3..=n_max`, with `Psi = 2 Psi_ev + 2 Psi_odd`,
/// `Phi` by differencing (with `Psi(2) = 0`), and main-term residuals.
pub fn census(n_max: u64) -> Result<CensusReport> {
    let (ev, odd) = psi_sweeps(n_max)?;
    Ok(report_from_sweeps(&ev, &odd))
}

/// Assemble the report from precomputed cumulative sweeps (index by N).
pub fn report_from_sweeps(ev: &[u64], odd: &[u64]) -> CensusReport {
    let k = asymptotics::constants();
    let n_max = ev.len() - 1;
    let mut rows = Vec::with_capacity(n_max - 2);
    let mut psi_prev = 0u64;
    for n in 3..=n_max {
        let row = census_row(n as u64, ev[n], odd[n], psi_prev, &k);
        psi_prev = row.psi;
        rows.push(row);
    }
    CensusReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_small_values() {
        let b = psi_brute(4).unwrap();
        assert_eq!(b.psi(3), 2); // AB and BA
        assert_eq!(b.phi(4), 6); // A2B, AB2, B2A, BA2, ABA, BAB
        assert_eq!(b.psi(4), 8);
        assert_eq!(b.psi_ev(4), 3); // digit words (1,1), (1,2), (2,1)
        assert_eq!(b.psi_odd(4), 1); // (1,1,1)
        assert_eq!(2 * b.psi_ev(4) + 2 * b.psi_odd(4), 8);
    }

    #[test]
    fn formula_small_values() {
        assert_eq!(psi_ev_formula(3).unwrap(), 1);
        assert_eq!(psi_ev_formula(4).unwrap(), 3);
        assert_eq!(psi_odd_formula(3).unwrap(), 0);
        assert_eq!(psi_odd_formula(4).unwrap(), 1);
    }

    #[test]
    fn floorsum_matches_formula() {
        for n in 3..=120 {
            assert_eq!(psi_odd_floorsum(n).unwrap(), psi_odd_formula(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn batched_formulas_match_per_n() {
        let n_max = 150;
        let ev = psi_ev_formula_all(n_max).unwrap();
        let odd = psi_odd_formula_all(n_max).unwrap();
        let odd_fs = psi_odd_floorsum_all(n_max).unwrap();
        for n in 3..=n_max {
            let i = n as usize;
            assert_eq!(ev[i], psi_ev_formula(n).unwrap(), "ev n={n}");
            assert_eq!(odd[i], psi_odd_formula(n).unwrap(), "odd n={n}");
            assert_eq!(odd_fs[i], psi_odd_floorsum(n).unwrap(), "floorsum n={n}");
        }
    }

    #[test]
    fn formulas_match_brute_force() {
        let b = psi_brute(80).unwrap();
        for n in 3..=80 {
            assert_eq!(psi_ev_formula(n).unwrap(), b.psi_ev(n), "ev n={n}");
            assert_eq!(psi_odd_formula(n).unwrap(), b.psi_odd(n), "odd n={n}");
        }
    }

    #[test]
    fn parity_class_symmetry() {
        // word reversal with A<->B pairs the classes off
        let b = psi_brute(60).unwrap();
        assert_eq!(b.phi_ba, b.phi_ab);
        assert_eq!(b.phi_bb, b.phi_aa);
    }

    #[test]
    fn sweeps_match_per_n_formulas() {
        let (ev, odd) = psi_sweeps(100).unwrap();
        for n in 3..=100u64 {
            assert_eq!(ev[n as usize], psi_ev_formula(n).unwrap(), "ev n={n}");
            assert_eq!(odd[n as usize], psi_odd_formula(n).unwrap(), "odd n={n}");
        }
    }

    #[test]
    fn census_rows() {
        let rep = census(10).unwrap();
        let r3 = rep.row(3);
        assert_eq!((r3.psi, r3.phi), (2, 2));
        let r4 = rep.row(4);
        assert_eq!((r4.psi, r4.phi), (8, 6));
        for r in &rep.rows {
            assert_eq!(r.psi, 2 * r.psi_ev + 2 * r.psi_odd);
        }
        // monotone
        for w in rep.rows.windows(2) {
            assert!(w[1].psi >= w[0].psi);
        }
    }
}
