//! Finite fields GF(p), GF(p^k) and towers GF(q^t) over a base GF(q).
//!
//! An element is stored as an integer index: the coefficient vector of its
//! residue polynomial read as a positional number in base q (the base field
//! order), lowest degree first. Since every base field is itself a power of
//! p, the index is also the base-p positional form of the full coefficient
//! vector over GF(p), so addition is digit-wise regardless of tower depth.
//!
//! Multiplication goes through log/antilog tables, which caps field orders at
//! [`MAX_ORDER`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

struct Inner {
    p: u32,
    order: u32,
    /// Absolute degree over GF(p).
    digits: u32,
    base: Option<FieldSpec>,
    /// Monic modulus over the base field, lowest degree first. `[0, 1]` for
    /// prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a tower index into `len` base-field coefficients.
fn decompose(mut index: u32, base_order: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = index % base_order;
        index /= base_order;
    }
    out
}

fn compose(coeffs: &[u32], base_order: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * base_order + c)
}

/// Arithmetic in base[x] / (modulus), used before tables exist.
struct QuotientRing<'a> {
    base: &'a FieldSpec,
    modulus: &'a [u32],
}

impl QuotientRing<'_> {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let t = self.degree();
        let q = self.base.order();
        let a = decompose(a, q, t);
        let b = decompose(b, q, t);
        let mut prod = vec![0u32; 2 * t];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = self.base.add(prod[i + j], self.base.mul(ai, bj));
            }
        }
        // modulus is monic: x^t = -(m_0 + ... + m_{t-1} x^{t-1})
        for k in (t..2 * t).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mj) in self.modulus[..t].iter().enumerate() {
                prod[k - t + j] = self.base.sub(prod[k - t + j], self.base.mul(c, mj));
            }
        }
        compose(&prod[..t], q)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1;
        let mut acc = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, acc);
            }
            acc = self.mul(acc, acc);
            e >>= 1;
        }
        result
    }

    /// Residue of x.
    fn x(&self) -> u32 {
        if self.degree() == 1 {
            self.base.neg(self.modulus[0])
        } else {
            self.base.order()
        }
    }

    /// Multiplicative order of `a`, or `None` if `a` never returns to 1
    /// within `bound` steps (e.g. a zero divisor).
    fn order_of(&self, a: u32, bound: u64) -> Option<u64> {
        let mut acc = a;
        for k in 1..=bound {
            if acc == 1 {
                return Some(k);
            }
            acc = self.mul(acc, a);
        }
        None
    }

    /// True iff the modulus has no monic factor of degree 1..=t/2.
    fn modulus_irreducible(&self) -> bool {
        let t = self.degree();
        let q = self.base.order() as u64;
        for d in 1..=t / 2 {
            let count = q.pow(d as u32);
            for low in 0..count {
                let mut divisor = decompose(low as u32, q as u32, d);
                divisor.push(1);
                if poly_rem_is_zero(self.base, self.modulus, &divisor) {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether monic `divisor` divides `dividend` over `base`.
fn poly_rem_is_zero(base: &FieldSpec, dividend: &[u32], divisor: &[u32]) -> bool {
    let mut rem = dividend.to_vec();
    let d = divisor.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - d;
        if lead != 0 {
            for (j, &cj) in divisor.iter().enumerate() {
                rem[shift + j] = base.sub(rem[shift + j], base.mul(lead, cj));
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_ORDER {
            return Err(Error::InvalidField(format!("order {p} exceeds {MAX_ORDER}")));
        }
        let n = p - 1;
        let generator = if p == 2 {
            1
        } else {
            let factors = prime_factors(n as u64);
            (2..p)
                .find(|&g| {
                    factors
                        .iter()
                        .all(|&r| mod_pow(g as u64, n as u64 / r, p as u64) != 1)
                })
                .expect("prime field has a generator")
        };
        let (exp, log) = build_tables(p, generator, |a, b| ((a as u64 * b as u64) % p as u64) as u32);
        Ok(FieldSpec(Arc::new(Inner {
            p,
            order: p,
            digits: 1,
            base: None,
            modulus: vec![0, 1],
            exp,
            log,
        })))
    }

    /// The extension base[x] / (modulus). `modulus` lists coefficients over
    /// the base field, lowest degree first, and must be monic and irreducible.
    pub fn extension(base: &FieldSpec, modulus: Vec<u32>) -> Result<FieldSpec> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= base.order()) {
            return Err(Error::InvalidField(format!(
                "coefficient {c} is not an element of GF({})",
                base.order()
            )));
        }
        let t = (modulus.len() - 1) as u32;
        let order = (base.order() as u64).checked_pow(t).filter(|&o| o <= MAX_ORDER as u64);
        let Some(order) = order else {
            return Err(Error::InvalidField(format!(
                "GF({}^{t}) exceeds the supported order {MAX_ORDER}",
                base.order()
            )));
        };
        let order = order as u32;
        let ring = QuotientRing { base, modulus: &modulus };
        if !ring.modulus_irreducible() {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let n = (order - 1) as u64;
        let factors = prime_factors(n);
        let is_generator = |g: u32| factors.iter().all(|&r| ring.pow(g, n / r) != 1);
        let x = ring.x();
        let generator = if x != 0 && is_generator(x) {
            x
        } else {
            (1..order).find(|&g| is_generator(g)).expect("finite field has a generator")
        };
        let (exp, log) = build_tables(order, generator, |a, b| ring.mul(a, b));
        Ok(FieldSpec(Arc::new(Inner {
            p: base.characteristic(),
            order,
            digits: base.0.digits * t,
            base: Some(base.clone()),
            modulus,
            exp,
            log,
        })))
    }

    /// GF(p^k) from a modulus over GF(p). Degree-one moduli yield the prime
    /// field itself.
    pub fn from_modulus(p: u32, modulus: Vec<u32>) -> Result<FieldSpec> {
        let prime = FieldSpec::prime(p)?;
        if modulus.len() == 2 {
            if modulus[1] != 1 || modulus[0] >= p {
                return Err(Error::InvalidField("modulus must be monic over GF(p)".into()));
            }
            return Ok(prime);
        }
        FieldSpec::extension(&prime, modulus)
    }

    /// The canonical field of order `q`: the prime field when `q` is prime,
    /// otherwise GF(p) extended by its lexicographically first primitive
    /// polynomial.
    pub fn gf(q: u32) -> Result<FieldSpec> {
        if q < 2 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        if r != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let prime = FieldSpec::prime(p)?;
        if k == 1 {
            return Ok(prime);
        }
        find_primitive_modulus(&prime, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Degree over the immediate base field (1 for prime fields).
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn absolute_degree(&self) -> u32 {
        self.0.digits
    }

    pub fn base(&self) -> Option<&FieldSpec> {
        self.0.base.as_ref()
    }

    /// Modulus coefficients over the base field, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    /// Index of the residue of x, i.e. the element the companion matrix
    /// represents. `None` for prime fields.
    pub fn x_residue(&self) -> Option<u32> {
        let base = self.base()?;
        Some(QuotientRing { base, modulus: &self.0.modulus }.x())
    }

    /// Whether the residue of x generates the multiplicative group.
    pub fn is_primitive(&self) -> bool {
        match self.x_residue() {
            Some(x) => x != 0 && self.multiplicative_order(x) == Some(self.order() as u64 - 1),
            None => false,
        }
    }

    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.order() as u64 - 1;
        let l = self.0.log[a as usize] as u64;
        Some(n / gcd(n, l))
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        FieldElement::new(self, index)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.digits == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.digits == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.order() - 1;
        Ok(self.0.exp[((n - self.0.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order() - 1) as u64;
        let k = (self.0.log[a as usize] as u64 * (e % n)) % n;
        self.0.exp[k as usize]
    }

    /// Coefficients of `a` over the base field, lowest degree first.
    pub fn coefficients(&self, a: u32) -> Result<Vec<u32>> {
        let base = self.base().ok_or(Error::NotATower)?;
        Ok(decompose(a, base.order(), self.degree()))
    }

    /// Companion matrix of the modulus over the base field: ones on the
    /// subdiagonal and the negated low coefficients in the last column. It
    /// acts on coefficient column vectors as multiplication by x.
    pub fn companion_matrix(&self) -> Result<Matrix> {
        let base = self.base().ok_or(Error::NotATower)?;
        let t = self.degree();
        let mut m = Matrix::zeros(base, t, t);
        for i in 1..t {
            m.set(i, i - 1, 1);
        }
        for i in 0..t {
            m.set(i, t - 1, base.neg(self.0.modulus[i]));
        }
        Ok(m)
    }

    /// The t×t matrix over the base field representing multiplication by
    /// `a`. This is a ring embedding: 0 maps to the zero matrix, 1 to the
    /// identity, and x^k to the k-th power of the companion matrix.
    pub fn phi_expand(&self, a: u32) -> Result<Matrix> {
        let base = self.base().ok_or(Error::NotATower)?;
        let t = self.degree();
        let q = base.order();
        let mut m = Matrix::zeros(base, t, t);
        // column j holds the coefficients of a * x^j
        let mut basis = 1u32;
        let x = self.x_residue().expect("extension");
        for j in 0..t {
            let col = decompose(self.mul(a, basis), q, t);
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
            basis = self.mul(basis, x);
        }
        Ok(m)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn build_tables(order: u32, generator: u32, mul: impl Fn(u32, u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let n = (order - 1) as usize;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![0u32; order as usize];
    let mut acc = 1u32;
    for k in 0..n {
        exp[k] = acc;
        exp[k + n] = acc;
        log[acc as usize] = k as u32;
        acc = mul(acc, generator);
    }
    debug_assert_eq!(acc, 1);
    (exp, log)
}

/// Lexicographically first monic degree-`t` polynomial over `base` whose
/// residue of x has multiplicative order q^t - 1, returned as the tower
/// GF(q^t) over `base`.
///
/// Candidates are ordered by their coefficient vector (p_0, ..., p_{t-1})
/// read as a base-q number with p_0 least significant, so higher-degree
/// coefficients are compared first: over GF(2), x^3+x+1 precedes x^3+x^2+1.
pub fn find_primitive_modulus(base: &FieldSpec, t: usize) -> Result<FieldSpec> {
    if t == 0 {
        return Err(Error::InvalidParams("extension degree must be at least 1".into()));
    }
    let q = base.order() as u64;
    let order = q.checked_pow(t as u32).filter(|&o| o <= MAX_ORDER as u64).ok_or_else(|| {
        Error::InvalidField(format!("GF({q}^{t}) exceeds the supported order {MAX_ORDER}"))
    })?;
    let n = order - 1;
    for low in 0..q.pow(t as u32) {
        let mut modulus = decompose(low as u32, q as u32, t);
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        let ring = QuotientRing { base, modulus: &modulus };
        if ring.order_of(ring.x(), n) == Some(n) {
            return FieldSpec::extension(base, modulus);
        }
    }
    unreachable!("a primitive polynomial exists over every finite field")
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base() {
            None => write!(f, "GF({})", self.order()),
            Some(b) => write!(f, "GF({}) over {:?} mod {:?}", self.order(), b, self.modulus()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

/// A field element carrying its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    index: u32,
    field: FieldSpec,
}

impl FieldElement {
    pub fn new(field: &FieldSpec, index: u32) -> Result<FieldElement> {
        if index >= field.order() {
            return Err(Error::InvalidParams(format!(
                "{index} is not an element of GF({})",
                field.order()
            )));
        }
        Ok(FieldElement { index, field: field.clone() })
    }

    pub fn zero(field: &FieldSpec) -> FieldElement {
        FieldElement { index: 0, field: field.clone() }
    }

    pub fn one(field: &FieldSpec) -> FieldElement {
        FieldElement { index: 1, field: field.clone() }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    fn with(&self, index: u32) -> FieldElement {
        FieldElement { index, field: self.field.clone() }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.index, other.index)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.index, other.index)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.index, other.index)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.index, other.index)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.index))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.index)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.index, e))
    }

    /// Matrix representation over the base field.
    pub fn expand(&self) -> Result<Matrix> {
        self.field.phi_expand(self.index)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.index, self.field.order())
    }
}
