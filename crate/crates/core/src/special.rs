//! Named series: Euler products, the two-parameter theta function, the
//! p-dissection of `f(-q)`, partition and divisor counts, and the third
//! order mock theta function `nu(q)` with its even part `EO*`.

use crate::error::{Error, Result};
use crate::lab::numtheory::is_prime;
use crate::series::{euler_product, Ring, Series};

/// `f(-q^A, -q^B) = sum_{j in Z} (-1)^j q^{A j(j+1)/2 + B j(j-1)/2}`.
pub fn theta_f(a: usize, b: usize, ring: Ring, truncation: usize) -> Series {
    assert!(a >= 1 && b >= 1, "theta exponents must be positive");
    let mut coeffs = vec![0i128; truncation + 1];
    let mut add = |exp: usize, j: usize| {
        coeffs[exp] += if j % 2 == 0 { 1 } else { -1 };
    };
    add(0, 0);
    // j = t and j = -t for t >= 1
    for (lo, hi) in [(a, b), (b, a)] {
        let mut t = 1usize;
        loop {
            let exp = lo * t * (t + 1) / 2 + hi * t * (t - 1) / 2;
            if exp > truncation {
                break;
            }
            add(exp, t);
            t += 1;
        }
    }
    Series::from_coeffs(ring, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// `(-1)^k q^{(3k^2+k)/2} f(-q^A, -q^B)`.
    Theta { k: i64, a: u64, b: u64 },
    /// `(-1)^{(±p-1)/6} q^{(p^2-1)/24} f(-q^{p^2})`.
    Residual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DissectionComponent {
    pub kind: ComponentKind,
    pub sign: i8,
    pub shift: u64,
    pub p: u64,
}

impl DissectionComponent {
    /// The component as a series: `sign * q^shift * inner`.
    pub fn expand(&self, ring: Ring, truncation: usize) -> Result<Series> {
        let inner = match self.kind {
            ComponentKind::Theta { a, b, .. } => theta_f(a as usize, b as usize, ring, truncation),
            ComponentKind::Residual => euler_product((self.p * self.p) as usize, ring, truncation)?,
        };
        inner.shift(self.shift as usize).scale(self.sign as i128)
    }

    /// Residue class mod p containing every exponent of the component.
    pub fn residue_class(&self) -> u64 {
        self.shift % self.p
    }
}

#[derive(Clone, Debug)]
pub struct Dissection {
    pub p: u64,
    pub components: Vec<DissectionComponent>,
    pub reassembled: Series,
}

/// The unique `e ∈ {+1, -1}` with `(e p - 1) / 6` integral, and that quotient.
fn residual_index(p: u64) -> (i64, i64) {
    let p = p as i64;
    let plus = (p - 1) % 6 == 0;
    let minus = (-p - 1) % 6 == 0;
    assert!(plus != minus, "exactly one of (±p-1)/6 is integral for p coprime to 6");
    if plus {
        (1, (p - 1) / 6)
    } else {
        (-1, (-p - 1) / 6)
    }
}

/// Components of the p-dissection of `f(-q)` for a prime `p >= 5`, plus the
/// sum of their expansions.
pub fn p_dissect_f(p: u64, ring: Ring, truncation: usize) -> Result<Dissection> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    let (_, excluded) = residual_index(p);
    let half = ((p - 1) / 2) as i64;
    let pi = p as i64;
    let mut components = Vec::with_capacity(p as usize);
    for k in -half..=half {
        if k == excluded {
            continue;
        }
        let a = (3 * pi * pi - (6 * k + 1) * pi) / 2;
        let b = (3 * pi * pi + (6 * k + 1) * pi) / 2;
        components.push(DissectionComponent {
            kind: ComponentKind::Theta { k, a: a as u64, b: b as u64 },
            sign: if k.rem_euclid(2) == 0 { 1 } else { -1 },
            shift: ((3 * k * k + k) / 2) as u64,
            p,
        });
    }
    components.push(DissectionComponent {
        kind: ComponentKind::Residual,
        sign: if excluded.rem_euclid(2) == 0 { 1 } else { -1 },
        shift: (p * p - 1) / 24,
        p,
    });

    let mut reassembled = Series::zero(ring, truncation);
    for c in &components {
        reassembled = reassembled.add(&c.expand(ring, truncation)?)?;
    }
    Ok(Dissection { p, components, reassembled })
}

/// `p(0..=N)` from Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Result<Vec<i128>> {
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[m - g1];
            if g2 <= m {
                term = term.checked_add(p[m - g2]).ok_or(Error::IntegerOverflow { index: m })?;
            }
            acc = if k % 2 == 1 { acc.checked_add(term) } else { acc.checked_sub(term) }
                .ok_or(Error::IntegerOverflow { index: m })?;
        }
        p[m] = acc;
    }
    Ok(p)
}

/// Divisor counts `d(0..=N)` with `d(0) = 0`.
pub fn divisor_counts(n: usize) -> Vec<u64> {
    let mut d = vec![0u64; n + 1];
    for k in 1..=n {
        for multiple in (k..=n).step_by(k) {
            d[multiple] += 1;
        }
    }
    d
}

/// Watson's third order mock theta function
/// `nu(q) = sum_{n >= 0} q^{n^2+n} / (-q; q^2)_{n+1}` as a formal series.
pub fn nu_series(ring: Ring, truncation: usize) -> Result<Series> {
    let mut total = Series::zero(ring, truncation);
    let mut denom = Series::one(ring, truncation);
    let mut n = 0usize;
    while n * n + n <= truncation {
        // (-q; q^2)_{n+1} = prod_{i=0..=n} (1 + q^{2i+1})
        let factor = Series::one(ring, truncation).add(&Series::monomial(ring, 2 * n + 1, 1, truncation))?;
        denom = denom.mul(&factor)?;
        let term = denom.invert()?.shift(n * n + n);
        total = total.add(&term)?;
        n += 1;
    }
    Ok(total)
}

/// Even part `(nu(q) + nu(-q)) / 2`: coefficients of `nu` at even exponents,
/// zero at odd ones.
pub fn eo_star_series(truncation: usize) -> Result<Series> {
    let nu = nu_series(Ring::Integers, truncation)?;
    let coeffs = nu.coeffs().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { 0 }).collect();
    Ok(Series::from_coeffs(Ring::Integers, coeffs))
}

/// Number of partitions of `n` whose even parts are all smaller than its odd
/// parts and in which the only part occurring an odd number of times is the
/// largest even part. Counted by listing partitions.
pub fn eo_star_count(n: usize) -> u64 {
    let mut count = 0;
    let mut parts = Vec::new();
    for_each_partition(n, n, &mut parts, &mut |p| {
        if is_eo_star(p) {
            count += 1;
        }
    });
    count
}

fn is_eo_star(parts: &[usize]) -> bool {
    let largest_even = parts.iter().copied().filter(|x| x % 2 == 0).max();
    let smallest_odd = parts.iter().copied().filter(|x| x % 2 == 1).min();
    if let (Some(e), Some(o)) = (largest_even, smallest_odd) {
        if e >= o {
            return false;
        }
    }
    // parts arrive in non-increasing order, so equal parts are adjacent
    parts.chunk_by(|x, y| x == y).all(|run| {
        let odd_multiplicity = run.len() % 2 == 1;
        odd_multiplicity == (Some(run[0]) == largest_even)
    })
}

/// Calls `visit` on every partition of `n` with parts at most `max_part`,
/// parts listed in non-increasing order.
pub(crate) fn for_each_partition(
    n: usize,
    max_part: usize,
    parts: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if n == 0 {
        visit(parts);
        return;
    }
    for k in (1..=max_part.min(n)).rev() {
        parts.push(k);
        for_each_partition(n - k, k, parts, visit);
        parts.pop();
    }
}
