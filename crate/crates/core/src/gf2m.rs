//! Arithmetic in GF(2^m) with a polynomial basis.
//!
//! Element bit `i` is the coefficient of `x^i`, so field elements and vectors
//! of F_2^m share one representation.

use std::fmt;
use std::sync::Arc;

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::vectorial::VectorialFunction;

/// Carry-less product of two polynomials of degree < 32 (result < 2^63).
fn clmul(a: u32, b: u32) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= (a as u64) << i;
        }
        b >>= 1;
        i += 1;
    }
    acc
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// True iff `modulus` is an irreducible polynomial of degree `m`.
pub fn is_irreducible(modulus: u32, m: usize) -> bool {
    if m == 0 || degree(modulus as u64) != m as i32 {
        return false;
    }
    // trial division by every polynomial of degree 1..=m/2
    (2u64..1 << (m / 2 + 1)).all(|d| poly_mod(modulus as u64, d) != 0)
}

/// The lexicographically smallest irreducible polynomial of degree `m`.
pub fn default_modulus(m: usize) -> u32 {
    ((1u32 << m)..(1u32 << (m + 1)))
        .find(|&p| is_irreducible(p, m))
        .expect("irreducible polynomials exist in every degree")
}

/// The field GF(2^m), with log/antilog tables over a primitive element.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    m: usize,
    modulus: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    pub const MIN_M: usize = 2;
    pub const MAX_M: usize = 16;

    /// GF(2^m) with the default modulus.
    pub fn new(m: usize) -> Result<Arc<Field>> {
        Self::check_m(m)?;
        Self::with_modulus(m, default_modulus(m))
    }

    fn check_m(m: usize) -> Result<()> {
        if !(Self::MIN_M..=Self::MAX_M).contains(&m) {
            return Err(Error::UnsupportedDimension {
                n: m,
                max: Self::MAX_M,
            });
        }
        Ok(())
    }

    pub fn with_modulus(m: usize, modulus: u32) -> Result<Arc<Field>> {
        Self::check_m(m)?;
        if !is_irreducible(modulus, m) {
            return Err(Error::ReducibleModulus { modulus, m });
        }
        let order = (1usize << m) - 1;
        let slow_mul = |a: u32, b: u32| poly_mod(clmul(a, b), modulus as u64) as u32;
        let mut generator = 0;
        let mut exp = vec![0u32; order];
        for g in 2u32..1 << m {
            let mut x = 1u32;
            let mut ok = true;
            for (i, e) in exp.iter_mut().enumerate() {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                *e = x;
                x = slow_mul(x, g);
            }
            if ok && x == 1 {
                generator = g;
                break;
            }
        }
        let mut log = vec![0u32; 1 << m];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(Arc::new(Field {
            m,
            modulus,
            generator,
            exp,
            log,
        }))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    /// A primitive element, the base of the log tables.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    fn order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// Product of raw element values.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % self.order()) as usize]
    }

    /// `a^d`, with `0^0 = 1`.
    pub fn pow(&self, a: u32, d: u64) -> u32 {
        if d == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 * (d % self.order())) % self.order();
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let e = (self.order() - self.log[a as usize] as u64) % self.order();
        Some(self.exp[e as usize])
    }

    /// Absolute trace `a + a^2 + ... + a^{2^{m-1}}`.
    pub fn trace(&self, a: u32) -> bool {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.m {
            t ^= x;
            x = self.mul(x, x);
        }
        debug_assert!(t <= 1);
        t == 1
    }

    /// `y -> Tr(delta * y^d)` as a Boolean function on m variables.
    pub fn trace_monomial(&self, delta: u32, d: u64) -> Result<BooleanFunction> {
        BooleanFunction::from_fn(self.m, |y| self.trace(self.mul(delta, self.pow(y, d))))
    }

    /// Wraps a raw value as an element of this field.
    pub fn element(self: &Arc<Self>, value: u32) -> Result<FieldElement> {
        crate::gf2::check_vector(value, self.m)?;
        Ok(FieldElement {
            field: Arc::clone(self),
            value,
        })
    }

    /// Text form `gf2m:m=<m>,mod=<hex>`.
    pub fn spec_string(&self) -> String {
        format!("gf2m:m={},mod={:x}", self.m, self.modulus)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec_string())
    }
}

/// An element of a specific field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<Field>,
    value: u32,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.same_field(other)
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x} in {}", self.value, self.field.spec_string())
    }
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn same_field(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.field, &other.field)
            || (self.field.m == other.field.m && self.field.modulus == other.field.modulus)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_value(self.value ^ other.value))
    }

    pub fn multiply(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_value(self.field.mul(self.value, other.value)))
    }

    pub fn pow(&self, d: u64) -> FieldElement {
        self.with_value(self.field.pow(self.value, d))
    }

    pub fn inverse(&self) -> Option<FieldElement> {
        self.field.inv(self.value).map(|v| self.with_value(v))
    }

    pub fn trace(&self) -> bool {
        self.field.trace(self.value)
    }

    fn with_value(&self, value: u32) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            value,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A power map `x -> x^d` together with its bijectivity flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerMap {
    pub function: VectorialFunction,
    pub bijective: bool,
}

/// Tabulates `x -> x^d` on F_2^m through the field's basis.
pub fn power_map(field: &Field, d: u64) -> Result<PowerMap> {
    if d == 0 || d > field.order() - 1 {
        return Err(Error::Hypothesis(format!(
            "exponent must lie in 1..={}",
            field.order() - 1
        )));
    }
    let table = (0..field.size()).map(|x| field.pow(x, d)).collect();
    Ok(PowerMap {
        function: VectorialFunction::new(field.m, table)?,
        bijective: gcd(d, field.order()) == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2), 0b111);
        assert_eq!(default_modulus(3), 0b1011);
        assert_eq!(default_modulus(6), 0b1000011);
        assert!(!is_irreducible(0b101, 2));
        assert!(Field::with_modulus(3, 0b1001).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(17).is_err());
    }

    #[test]
    fn multiplication_examples() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.mul(0b010, 0b100), 0b011);
        let a = f.element(0b110).unwrap();
        let one = f.element(1).unwrap();
        assert_eq!(a.multiply(&one).unwrap(), a);
        for v in 1..8 {
            let x = f.element(v).unwrap();
            assert_eq!(x.multiply(&x.pow(6)).unwrap().value(), 1);
        }
        let g = Field::new(4).unwrap();
        assert_eq!(
            a.multiply(&g.element(1).unwrap()),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn log_tables_agree_with_carry_less_product() {
        for m in 2..=8 {
            let f = Field::new(m).unwrap();
            for a in 0..f.size() {
                for b in 0..f.size() {
                    let slow = poly_mod(clmul(a, b), f.modulus() as u64) as u32;
                    assert_eq!(f.mul(a, b), slow);
                }
            }
        }
    }

    #[test]
    fn frobenius_and_trace() {
        for m in 2..=8 {
            let f = Field::new(m).unwrap();
            let mut zeros = 0;
            for a in 0..f.size() {
                for b in 0..f.size() {
                    assert_eq!(f.pow(a ^ b, 2), f.pow(a, 2) ^ f.pow(b, 2));
                }
                assert_eq!(f.trace(f.mul(a, a)), f.trace(a));
                zeros += !f.trace(a) as u32;
            }
            assert_eq!(zeros, f.size() / 2);
            assert!(!f.trace(0));
            assert_eq!(f.trace(1), m % 2 == 1);
        }
    }

    #[test]
    fn power_maps() {
        let f = Field::new(3).unwrap();
        let id = power_map(&f, 1).unwrap();
        assert_eq!(id.function, VectorialFunction::identity(3).unwrap());
        assert!(id.bijective);
        let cube = power_map(&f, 3).unwrap();
        assert!(cube.bijective && cube.function.is_permutation() && cube.function.is_apn());
        let g = Field::new(6).unwrap();
        let p5 = power_map(&g, 5).unwrap();
        assert!(p5.bijective && p5.function.is_permutation() && !p5.function.is_apn());
        assert!(!power_map(&g, 3).unwrap().bijective);
        assert!(power_map(&g, 0).is_err());
    }

    #[test]
    fn power_maps_compose() {
        let f = Field::new(7).unwrap();
        for (d, e) in [(3u64, 5u64), (9, 11), (127 - 2, 3)] {
            let a = power_map(&f, d).unwrap().function;
            let b = power_map(&f, e).unwrap().function;
            let de = (d * e) % 127;
            let de = if de == 0 { 127 } else { de };
            for x in 1..128 {
                assert_eq!(b.apply(a.apply(x)), f.pow(x, de));
            }
        }
    }
}
