//! Exact truncated formal power series over arbitrary-precision integers,
//! the growth series of the lamplighter group and its k-shift subsets, and
//! the generating functions of the program grammars at each pruning level.
//!
//! Closed forms are expanded by exact long division of integer polynomials;
//! the grammar equations are solved by fixed-point iteration on truncated
//! series (every grammar is proper, so iteration n fixes coefficients
//! through degree n). Square-root closed forms are never expanded directly.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("star of unit: constant term must be zero")]
    StarOfUnit,
    #[error("no sign change in (0, 1)")]
    NoSignChange,
    #[error("zero coefficient in growth-rate window")]
    ZeroInWindow,
    #[error("window larger than available coefficients")]
    WindowTooLarge,
}

/// Truncated power series `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    /// The zero series truncated at degree `order`.
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    /// The constant series 1 truncated at degree `order`.
    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Series from low-order coefficients, zero-padded to `order`.
    pub fn from_coeffs<I: IntoIterator<Item = i64>>(coeffs: I, order: usize) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(BigInt::from).collect();
        c.resize(order + 1, BigInt::zero());
        c.truncate(order + 1);
        Series { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Series {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, BigInt::zero());
        c.truncate(order + 1);
        Series { coeffs: c }
    }

    /// Multiply by `z^k`, keeping the truncation order.
    pub fn shifted(&self, k: usize) -> Series {
        let n = self.coeffs.len();
        let mut c = vec![BigInt::zero(); n];
        for i in k..n {
            c[i] = self.coeffs[i - k].clone();
        }
        Series { coeffs: c }
    }
}

fn common_order(a: &Series, b: &Series) -> usize {
    a.order().min(b.order())
}

pub fn ps_add(a: &Series, b: &Series) -> Series {
    let n = common_order(a, b);
    Series {
        coeffs: (0..=n).map(|i| &a.coeffs[i] + &b.coeffs[i]).collect(),
    }
}

pub fn ps_sub(a: &Series, b: &Series) -> Series {
    let n = common_order(a, b);
    Series {
        coeffs: (0..=n).map(|i| &a.coeffs[i] - &b.coeffs[i]).collect(),
    }
}

pub fn ps_mul(a: &Series, b: &Series) -> Series {
    let n = common_order(a, b);
    let mut c = vec![BigInt::zero(); n + 1];
    for i in 0..=n {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=(n - i) {
            c[i + j] += &a.coeffs[i] * &b.coeffs[j];
        }
    }
    Series { coeffs: c }
}

/// Quasi-inverse `a* = 1/(1 - a)`: the unique `s` with `s = 1 + a s`.
pub fn ps_star(a: &Series) -> Result<Series, SeriesError> {
    if !a.coeffs[0].is_zero() {
        return Err(SeriesError::StarOfUnit);
    }
    let n = a.order();
    let mut s = vec![BigInt::zero(); n + 1];
    s[0] = BigInt::one();
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            if !a.coeffs[i].is_zero() {
                acc += &a.coeffs[i] * &s[k - i];
            }
        }
        s[k] = acc;
    }
    Ok(Series { coeffs: s })
}

// ---------------------------------------------------------------------------
// Integer polynomials and rational-series expansion.

/// Polynomial product over exact integers.
pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            c[i + j] += ai * bj;
        }
    }
    c
}

pub fn poly_from(coeffs: &[i64]) -> Vec<BigInt> {
    coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

/// A rational function with nonzero denominator constant term, expandable
/// exactly to any order.
#[derive(Clone, Debug)]
pub struct RationalSeries {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
}

impl RationalSeries {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Self {
        assert!(
            !denominator.is_empty() && !denominator[0].is_zero(),
            "denominator constant term must be nonzero"
        );
        RationalSeries {
            numerator,
            denominator,
        }
    }

    /// Long division of numerator by denominator to degree `order`.
    pub fn expand(&self, order: usize) -> Series {
        let b0 = &self.denominator[0];
        let mut c = vec![BigInt::zero(); order + 1];
        for n in 0..=order {
            let mut acc = self
                .numerator
                .get(n)
                .cloned()
                .unwrap_or_else(BigInt::zero);
            let kmax = n.min(self.denominator.len() - 1);
            for k in 1..=kmax {
                acc -= &self.denominator[k] * &c[n - k];
            }
            let (q, r) = num_integer::div_rem_bigint(acc, b0);
            debug_assert!(r.is_zero(), "inexact long division");
            c[n] = q;
        }
        Series { coeffs: c }
    }
}

// BigInt division with remainder, kept local to avoid a num-integer dep for
// one call site.
mod num_integer {
    use num_bigint::BigInt;
    pub fn div_rem_bigint(a: BigInt, b: &BigInt) -> (BigInt, BigInt) {
        (&a / b, &a % b)
    }
}

// ---------------------------------------------------------------------------
// Closed-form growth series for the group.

/// Parry's wreath-product growth formula specialized to `G wr Z`:
/// `(1 + z^2 (G-1) (z^2 G)*)^2 G Z(z G)` with `Z(w) = (1+w)/(1-w)`.
pub fn ps_parry(g: &Series) -> Result<Series, SeriesError> {
    assert!(g.coeffs[0].is_one(), "lamp-group series must start at 1");
    let n = g.order();
    let one = Series::one(n);
    let g_minus_1 = ps_sub(g, &one);
    let z2g = g.shifted(2);
    let inner = ps_mul(&g_minus_1.shifted(2), &ps_star(&z2g)?);
    let head = ps_add(&one, &inner);
    let head2 = ps_mul(&head, &head);
    let zg = g.shifted(1);
    let z_factor = ps_mul(&ps_add(&one, &zg), &ps_star(&zg)?);
    Ok(ps_mul(&ps_mul(&head2, g), &z_factor))
}

/// Growth series of the lamplighter group:
/// `L(z) = ((1-z^2)/(1-z^2-z^3))^2 (1+z)(1+z+z^2)/(1-z-z^2)`.
pub fn series_l(order: usize) -> Series {
    let sq = poly_from(&[1, 0, -1]);
    let num = poly_mul(
        &poly_mul(&poly_mul(&sq, &sq), &poly_from(&[1, 1])),
        &poly_from(&[1, 1, 1]),
    );
    let dsq = poly_from(&[1, 0, -1, -1]);
    let den = poly_mul(&poly_mul(&dsq, &dsq), &poly_from(&[1, -1, -1]));
    RationalSeries::new(num, den).expand(order)
}

fn lk_prefactor() -> RationalSeries {
    let sq = poly_from(&[1, 0, -1]);
    let dsq = poly_from(&[1, 0, -1, -1]);
    RationalSeries::new(poly_mul(&sq, &sq), poly_mul(&dsq, &dsq))
}

fn pow_poly(base: &[BigInt], exp: u64) -> Vec<BigInt> {
    let mut acc = poly_from(&[1]);
    for _ in 0..exp {
        acc = poly_mul(&acc, base);
    }
    acc
}

/// `L_k(z) = ((1-z^2)/(1-z^2-z^3))^2 (1+z)(z+z^2)^{|k|}`.
pub fn series_lk(k: i64, order: usize) -> Series {
    let pre = lk_prefactor();
    let num = poly_mul(
        &poly_mul(&pre.numerator, &poly_from(&[1, 1])),
        &pow_poly(&poly_from(&[0, 1, 1]), k.unsigned_abs()),
    );
    RationalSeries::new(num, pre.denominator).expand(order)
}

/// `L_{k,0}(z) = ((1-z^2)/(1-z^2-z^3))^2 (z+z^2)^{|k|}`.
pub fn series_lk0(k: i64, order: usize) -> Series {
    let pre = lk_prefactor();
    let num = poly_mul(
        &pre.numerator,
        &pow_poly(&poly_from(&[0, 1, 1]), k.unsigned_abs()),
    );
    RationalSeries::new(num, pre.denominator).expand(order)
}

/// `L_{k,1}(z) = z L_{k,0}(z)`.
pub fn series_lk1(k: i64, order: usize) -> Series {
    series_lk0(k, order).shifted(1)
}

// ---------------------------------------------------------------------------
// Program-grammar generating functions, by fixed-point iteration.

fn fixed_point(order: usize, step: impl Fn(&Series) -> Series) -> Series {
    let mut e = Series::zero(order);
    for _ in 0..=(2 * order + 2) {
        let next = step(&e);
        if next == e {
            return e;
        }
        e = next;
    }
    panic!("grammar fixed point did not converge by order {order}");
}

/// Naive grammar `E = (t + r + l + [E])*`: solves `E = (3z + z^2 E)*`.
pub fn solve_e_naive(order: usize) -> Series {
    fixed_point(order, |e| {
        let base = ps_add(&Series::from_coeffs([0, 3], order), &e.shifted(2));
        ps_star(&base).expect("proper grammar")
    })
}

/// Canonical grammar `E = L ([E] L)*`: solves `E = L (z^2 E L)*`.
pub fn solve_e_canonical(order: usize) -> Series {
    let l = series_l(order);
    fixed_point(order, |e| {
        let inner = ps_mul(e, &l).shifted(2);
        ps_mul(&l, &ps_star(&inner).expect("proper grammar"))
    })
}

/// Dead-loop-after grammar `E = L + L ([E](L - L00))* [E] L`.
pub fn solve_e_dead_after(order: usize) -> Series {
    let l = series_l(order);
    let l_minus_00 = ps_sub(&l, &series_lk0(0, order));
    fixed_point(order, |e| {
        let star = ps_star(&ps_mul(e, &l_minus_00).shifted(2)).expect("proper grammar");
        let tail = ps_mul(&ps_mul(&ps_mul(&l, &star), &e.shifted(2)), &l);
        ps_add(&l, &tail)
    })
}

/// Dead-loop-inside system:
/// `E = L + L (Y(L - L00))* Y L`,
/// `Y = [L + (L - L01)(Y(L - L00))* Y L]` (the brackets contribute `z^2`).
/// Returns `(E, Y)`.
pub fn solve_e_dead_inside(order: usize) -> (Series, Series) {
    let l = series_l(order);
    let l_minus_00 = ps_sub(&l, &series_lk0(0, order));
    let l_minus_01 = ps_sub(&l, &series_lk1(0, order));
    let mut e = Series::zero(order);
    let mut y = Series::zero(order);
    for _ in 0..=(2 * order + 4) {
        let star = ps_star(&ps_mul(&y, &l_minus_00)).expect("proper grammar");
        let next_e = ps_add(&l, &ps_mul(&ps_mul(&ps_mul(&l, &star), &y), &l));
        let body = ps_add(&l, &ps_mul(&ps_mul(&ps_mul(&l_minus_01, &star), &y), &l));
        let next_y = body.shifted(2);
        if next_e == e && next_y == y {
            return (e, y);
        }
        e = next_e;
        y = next_y;
    }
    panic!("dead-inside system did not converge by order {order}");
}

// ---------------------------------------------------------------------------
// Numeric estimates.

/// Radius polynomial of the canonical program grammar, ascending degree;
/// its smallest positive root is the radius of convergence of
/// `solve_e_canonical`, the reciprocal of the ≈ 4.432 growth rate.
pub const CANONICAL_RADIUS_POLY: [f64; 9] =
    [-1.0, 3.0, 7.0, 0.0, -11.0, -9.0, 2.0, 7.0, 3.0];

/// Smallest root of `p` in the open interval (0, 1), by grid scan plus
/// bisection to `tol`.
pub fn smallest_positive_root(p: &[f64], tol: f64) -> Result<f64, SeriesError> {
    let eval = |x: f64| p.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    let grid = 4096;
    for step in 1..=grid {
        let (mut lo, mut hi) = ((step - 1) as f64 / grid as f64, step as f64 / grid as f64);
        if eval(lo).signum() * eval(hi).signum() <= 0.0 && eval(lo) != 0.0 {
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if eval(lo).signum() * eval(mid).signum() <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(SeriesError::NoSignChange)
}

/// Estimate of `lim c_n^{1/n}` from the mean of consecutive coefficient
/// ratios over the last `window` terms, with the ratio spread as error bar.
pub fn growth_rate(s: &Series, window: usize) -> Result<(f64, f64), SeriesError> {
    let n = s.order();
    if window + 1 > n + 1 || window == 0 {
        return Err(SeriesError::WindowTooLarge);
    }
    let mut ratios = Vec::with_capacity(window);
    for i in (n - window)..n {
        let a = &s.coeffs[i];
        let b = &s.coeffs[i + 1];
        if a.is_zero() || b.is_zero() {
            return Err(SeriesError::ZeroInWindow);
        }
        ratios.push(big_ratio(b, a));
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    Ok((mean, max - min))
}

/// `a / b` as f64, robust to magnitudes past the f64 range.
pub fn big_ratio(a: &BigInt, b: &BigInt) -> f64 {
    if let (Some(x), Some(y)) = (a.to_f64(), b.to_f64()) {
        if x.is_finite() && y.is_finite() && y != 0.0 {
            return x / y;
        }
    }
    // Scale both down by a common power of two.
    let bits = a.magnitude().bits().max(b.magnitude().bits());
    let drop = bits.saturating_sub(500);
    let x = (a >> drop).to_f64().unwrap();
    let y = (b >> drop).to_f64().unwrap();
    x / y
}
