//! (a,b,m)-copartitions.
//!
//! A copartition of `n` is a triple `(gamma, rho, sigma)`:
//!
//! - `gamma` (ground): parts `≡ a (mod m)` and `>= a`,
//! - `sigma` (sky): parts `≡ b (mod m)` and `>= b`,
//! - `rho`: a rectangle of `|sigma|` parts, each of size `m * |gamma|`
//!   (empty when `gamma` is empty),
//!
//! with all parts summing to `n`. Parts are positive, so a residue `0` means
//! the smallest admissible part is `m`.
//!
//! Three independent routes produce `cp_{a,b,m}(n)`: listing
//! ([`enumerate_copartitions`]), a dynamic program over the ground/sky part
//! counts ([`count_copartitions`]), and expansion of the infinite-product
//! generating function ([`cp_gf_series`]).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{pochhammer, Ring, Series};
use crate::special::{divisor_counts, partition_numbers};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CopartitionParams {
    pub a: u64,
    pub b: u64,
    pub m: u64,
}

impl CopartitionParams {
    pub fn new(a: u64, b: u64, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::UnsupportedParams { a, b, m, reason: "m must be positive" });
        }
        Ok(CopartitionParams { a, b, m })
    }

    pub fn swapped(self) -> Self {
        CopartitionParams { a: self.b, b: self.a, m: self.m }
    }

    /// Smallest admissible ground part.
    fn ground_base(&self) -> u64 {
        if self.a == 0 {
            self.m
        } else {
            self.a
        }
    }

    /// Smallest admissible sky part.
    fn sky_base(&self) -> u64 {
        if self.b == 0 {
            self.m
        } else {
            self.b
        }
    }
}

impl fmt::Display for CopartitionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.m)
    }
}

/// One copartition; each component is stored in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopartitionTriple {
    pub gamma: Vec<u64>,
    pub rho: Vec<u64>,
    pub sigma: Vec<u64>,
}

impl CopartitionTriple {
    pub fn size(&self) -> u64 {
        self.gamma.iter().chain(&self.rho).chain(&self.sigma).sum()
    }

    pub fn ground_parts(&self) -> usize {
        self.gamma.len()
    }

    pub fn sky_parts(&self) -> usize {
        self.sigma.len()
    }

    /// Checks every defining condition against `params`.
    pub fn is_valid(&self, params: &CopartitionParams) -> bool {
        let CopartitionParams { a, b, m } = *params;
        let sorted = |v: &[u64]| v.windows(2).all(|w| w[0] >= w[1]);
        let ground_ok = self.gamma.iter().all(|&x| x >= a.max(1) && x % m == a % m);
        let sky_ok = self.sigma.iter().all(|&x| x >= b.max(1) && x % m == b % m);
        let rect = m * self.gamma.len() as u64;
        let rho_ok = if self.gamma.is_empty() {
            self.rho.is_empty()
        } else {
            self.rho.len() == self.sigma.len() && self.rho.iter().all(|&x| x == rect)
        };
        ground_ok && sky_ok && rho_ok && sorted(&self.gamma) && sorted(&self.sigma)
    }
}

fn fmt_parts(parts: &[u64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if parts.is_empty() {
        return write!(f, "∅");
    }
    write!(f, "{{")?;
    for (i, run) in parts.chunk_by(|x, y| x == y).enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        match run.len() {
            1 => write!(f, "{}", run[0])?,
            k => write!(f, "{}^{}", run[0], k)?,
        }
    }
    write!(f, "}}")
}

impl fmt::Display for CopartitionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_parts(&self.gamma, f)?;
        write!(f, ",")?;
        fmt_parts(&self.rho, f)?;
        write!(f, ",")?;
        fmt_parts(&self.sigma, f)?;
        write!(f, ")")
    }
}

/// All partitions of every mass `0..=n` into parts `base, base+m, base+2m, ...`,
/// indexed `[mass][part count]`.
fn restricted_partitions(base: u64, m: u64, n: u64) -> Vec<Vec<Vec<Vec<u64>>>> {
    let mut by_mass: Vec<Vec<Vec<Vec<u64>>>> = vec![Vec::new(); n as usize + 1];
    let mut current = Vec::new();
    fn walk(
        remaining: u64,
        max_part: u64,
        base: u64,
        m: u64,
        total: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<Vec<Vec<u64>>>>,
    ) {
        let mass = (total - remaining) as usize;
        let slot = &mut out[mass];
        if slot.len() <= current.len() {
            slot.resize(current.len() + 1, Vec::new());
        }
        slot[current.len()].push(current.clone());
        let mut part = base;
        while part <= max_part.min(remaining) {
            current.push(part);
            walk(remaining - part, part, base, m, total, current, out);
            current.pop();
            part += m;
        }
    }
    walk(n, n, base, m, n, &mut current, &mut by_mass);
    by_mass
}

/// Lists every copartition of `n`, ordered by ground count, sky count, then
/// lexicographically by `gamma` and `sigma`. Exponential in `n`.
pub fn enumerate_copartitions(params: &CopartitionParams, n: u64) -> Vec<CopartitionTriple> {
    let m = params.m;
    let ground = restricted_partitions(params.ground_base(), m, n);
    let sky = restricted_partitions(params.sky_base(), m, n);
    let mut out = Vec::new();
    for (g_mass, by_len) in ground.iter().enumerate() {
        for (w, gammas) in by_len.iter().enumerate() {
            for gamma in gammas {
                let rest = n - g_mass as u64;
                let mut s = 0u64;
                // rectangle and minimal sky mass both grow with s
                while m * w as u64 * s + params.sky_base() * s <= rest {
                    let sky_mass = (rest - m * w as u64 * s) as usize;
                    if let Some(sigmas) = sky[sky_mass].get(s as usize) {
                        for sigma in sigmas {
                            let rho = if w == 0 { Vec::new() } else { vec![m * w as u64; s as usize] };
                            out.push(CopartitionTriple { gamma: gamma.clone(), rho, sigma: sigma.clone() });
                        }
                    }
                    s += 1;
                }
            }
        }
    }
    out.sort_by(|x, y| {
        (x.gamma.len(), x.sigma.len(), &x.gamma, &x.sigma).cmp(&(
            y.gamma.len(),
            y.sigma.len(),
            &y.gamma,
            &y.sigma,
        ))
    });
    out
}

/// Dynamic-programming counter reusable across many `n` for one parameter set.
///
/// With `w` ground parts and `s` sky parts, write ground parts as
/// `base_a + m t_i` and sky parts as `base_b + m u_j`. The remaining mass
/// `n - base_a w - base_b s - m w s` must be `m R`, and the count is
/// `sum_{T + U = R} P(T, <= w) P(U, <= s)` where `P(t, <= k)` counts
/// partitions of `t` into at most `k` parts.
pub struct CopartitionCounter {
    params: CopartitionParams,
    max_n: u64,
    /// `at_most[k][t] = P(t, <= k)` for `k, t <= max_n / m`.
    at_most: Vec<Vec<BigUint>>,
}

impl CopartitionCounter {
    pub fn new(params: CopartitionParams, max_n: u64) -> Self {
        let t_max = (max_n / params.m) as usize;
        let mut at_most: Vec<Vec<BigUint>> = Vec::with_capacity(t_max + 1);
        let mut row0 = vec![BigUint::zero(); t_max + 1];
        row0[0] = BigUint::from(1u32);
        at_most.push(row0);
        for k in 1..=t_max {
            let mut row = at_most[k - 1].clone();
            for t in k..=t_max {
                let add = row[t - k].clone();
                row[t] += add;
            }
            at_most.push(row);
        }
        CopartitionCounter { params, max_n, at_most }
    }

    pub fn params(&self) -> CopartitionParams {
        self.params
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    fn partitions_at_most(&self, t: usize, k: usize) -> &BigUint {
        &self.at_most[k.min(self.at_most.len() - 1)][t]
    }

    /// Calls `visit(w, s, count)` for every nonzero refined count of size `n`.
    fn for_each_refined(&self, n: u64, mut visit: impl FnMut(usize, usize, BigUint)) {
        assert!(n <= self.max_n, "n = {n} exceeds counter capacity {}", self.max_n);
        let CopartitionParams { m, .. } = self.params;
        let (ga, sb) = (self.params.ground_base(), self.params.sky_base());
        let mut w = 0u64;
        while ga * w <= n {
            let mut s = 0u64;
            while ga * w + sb * s + m * w * s <= n {
                let rest = n - ga * w - sb * s - m * w * s;
                if rest % m == 0 {
                    let r = (rest / m) as usize;
                    let mut total = BigUint::zero();
                    for t in 0..=r {
                        let g = self.partitions_at_most(t, w as usize);
                        if g.is_zero() {
                            continue;
                        }
                        let h = self.partitions_at_most(r - t, s as usize);
                        if !h.is_zero() {
                            total += g * h;
                        }
                    }
                    if !total.is_zero() {
                        visit(w as usize, s as usize, total);
                    }
                }
                s += 1;
            }
            w += 1;
        }
    }

    pub fn count(&self, n: u64) -> BigUint {
        let mut total = BigUint::zero();
        self.for_each_refined(n, |_, _, c| total += c);
        total
    }

    pub fn refined(&self, n: u64) -> RefinedCountTable {
        let mut entries = BTreeMap::new();
        self.for_each_refined(n, |w, s, c| {
            entries.insert((w, s), c);
        });
        RefinedCountTable { n, entries }
    }
}

/// `cp_{a,b,m}(n)` by dynamic programming.
pub fn count_copartitions(params: &CopartitionParams, n: u64) -> BigUint {
    CopartitionCounter::new(*params, n).count(n)
}

/// Counts `cp_{a,b,m}(w, s, n)` keyed by `(w, s)`: `w` ground parts, `s` sky parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedCountTable {
    pub n: u64,
    pub entries: BTreeMap<(usize, usize), BigUint>,
}

impl RefinedCountTable {
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn get(&self, w: usize, s: usize) -> BigUint {
        self.entries.get(&(w, s)).cloned().unwrap_or_default()
    }
}

pub fn refined_counts(params: &CopartitionParams, n: u64) -> RefinedCountTable {
    CopartitionCounter::new(*params, n).refined(n)
}

/// Generating function `(q^{a+b}; q^m) / ((q^b; q^m) (q^a; q^m))` truncated at `N`.
pub fn cp_gf_series(params: &CopartitionParams, ring: Ring, truncation: usize) -> Result<Series> {
    let CopartitionParams { a, b, m } = *params;
    if a == 0 || b == 0 {
        return Err(Error::UnsupportedParams {
            a,
            b,
            m,
            reason: "the product formula degenerates when a or b is 0",
        });
    }
    let (a, b, m) = (a as usize, b as usize, m as usize);
    let num = pochhammer(a + b, m, ring, truncation)?;
    let sky = pochhammer(b, m, ring, truncation)?.invert()?;
    let ground = pochhammer(a, m, ring, truncation)?.invert()?;
    num.mul(&sky)?.mul(&ground)
}

/// Closed-form sequences for the boundary parameter sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialVariant {
    /// `cp_{1,1,1}(n) = sum_{k=0}^{n} p(k)`
    Cp111,
    /// `cp_{0,1,1}(n) = sum_{k=0}^{n-1} p(k) d(n-k)`
    Cp011,
    /// `cp_{0,0,1}(n) = -p(n) + 2 sum_{k=0}^{n-1} p(k) d(n-k)`
    Cp001,
}

pub fn cp_special(variant: SpecialVariant, n: usize) -> Result<Vec<i128>> {
    let p = partition_numbers(n)?;
    let overflow = |index| Error::IntegerOverflow { index };
    match variant {
        SpecialVariant::Cp111 => {
            let mut acc: i128 = 0;
            p.iter()
                .enumerate()
                .map(|(i, &x)| {
                    acc = acc.checked_add(x).ok_or(overflow(i))?;
                    Ok(acc)
                })
                .collect()
        }
        SpecialVariant::Cp011 | SpecialVariant::Cp001 => {
            let d = divisor_counts(n);
            (0..=n)
                .map(|j| {
                    let mut conv: i128 = 0;
                    for k in 0..j {
                        let term = p[k].checked_mul(d[j - k] as i128).ok_or(overflow(j))?;
                        conv = conv.checked_add(term).ok_or(overflow(j))?;
                    }
                    if variant == SpecialVariant::Cp011 {
                        Ok(conv)
                    } else {
                        conv.checked_mul(2).and_then(|c| c.checked_sub(p[j])).ok_or(overflow(j))
                    }
                })
                .collect()
        }
    }
}

/// Coefficients of the two-marker generating function
/// `(x y q^{a+b}; q^m) / ((x q^b; q^m) (y q^a; q^m))`, stored as
/// `[s][w][n]` where `x^s` marks sky parts and `y^w` marks ground parts.
pub struct BivariateExpansion {
    max_s: usize,
    max_w: usize,
    n_max: usize,
    coeffs: Vec<i128>,
}

impl BivariateExpansion {
    pub fn new(params: &CopartitionParams, n_max: usize) -> Result<Self> {
        let CopartitionParams { a, b, m } = *params;
        if a == 0 || b == 0 {
            return Err(Error::UnsupportedParams {
                a,
                b,
                m,
                reason: "the product formula degenerates when a or b is 0",
            });
        }
        let (a, b, m) = (a as usize, b as usize, m as usize);
        let (max_s, max_w) = (n_max / b, n_max / a);
        let mut e = BivariateExpansion {
            max_s,
            max_w,
            n_max,
            coeffs: vec![0; (max_s + 1) * (max_w + 1) * (n_max + 1)],
        };
        let idx = |s: usize, w: usize, n: usize| (s * (max_w + 1) + w) * (n_max + 1) + n;
        e.coeffs[idx(0, 0, 0)] = 1;
        let overflow = |n| Error::IntegerOverflow { index: n };

        // 1 / (1 - x q^k) for k = b, b+m, ...
        for k in (b..=n_max).step_by(m) {
            for s in 1..=max_s {
                for w in 0..=max_w {
                    for n in k..=n_max {
                        let src = e.coeffs[idx(s - 1, w, n - k)];
                        let dst = &mut e.coeffs[idx(s, w, n)];
                        *dst = dst.checked_add(src).ok_or(overflow(n))?;
                    }
                }
            }
        }
        // 1 / (1 - y q^k) for k = a, a+m, ...
        for k in (a..=n_max).step_by(m) {
            for s in 0..=max_s {
                for w in 1..=max_w {
                    for n in k..=n_max {
                        let src = e.coeffs[idx(s, w - 1, n - k)];
                        let dst = &mut e.coeffs[idx(s, w, n)];
                        *dst = dst.checked_add(src).ok_or(overflow(n))?;
                    }
                }
            }
        }
        // (1 - x y q^k) for k = a+b, a+b+m, ...; descending s reads old values
        for k in (a + b..=n_max).step_by(m) {
            for s in (1..=max_s).rev() {
                for w in (1..=max_w).rev() {
                    for n in (k..=n_max).rev() {
                        let src = e.coeffs[idx(s - 1, w - 1, n - k)];
                        let dst = &mut e.coeffs[idx(s, w, n)];
                        *dst = dst.checked_sub(src).ok_or(overflow(n))?;
                    }
                }
            }
        }
        Ok(e)
    }

    /// Coefficient of `x^s y^w q^n`.
    pub fn coeff(&self, s: usize, w: usize, n: usize) -> i128 {
        if s > self.max_s || w > self.max_w || n > self.n_max {
            return 0;
        }
        self.coeffs[(s * (self.max_w + 1) + w) * (self.n_max + 1) + n]
    }
}

/// Compares the two-marker generating function against [`refined_counts`]
/// for every `n <= n_max`.
pub fn bivariate_gf_check(params: &CopartitionParams, n_max: usize) -> Result<bool> {
    let expansion = BivariateExpansion::new(params, n_max)?;
    let counter = CopartitionCounter::new(*params, n_max as u64);
    for n in 0..=n_max {
        let table = counter.refined(n as u64);
        for s in 0..=expansion.max_s {
            for w in 0..=expansion.max_w {
                let expected = table.get(w, s).to_i128().expect("small counts fit in i128");
                if expansion.coeff(s, w, n) != expected {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
