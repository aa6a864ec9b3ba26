//! Algebraic normal form polynomials and their text syntax.
//!
//! Accepted syntax: sums with `+`, products with `*` or plain juxtaposition,
//! parentheses, the constants `0` and `1`, and variables `x<k>`, `z<k>`,
//! `x_<k>`, `z_<k>` or `x_{<k>}` for `1 <= k <= n`. `x` and `z` name the same
//! variables. Text after `#` up to the end of the line is ignored.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{self, MAX_N};

/// A polynomial in `F_2[x_1..x_n] / (x_i^2 + x_i)`, stored as its set of
/// monomial masks. Mask `u` is the monomial `prod_{u_i = 1} x_i`; mask 0 is
/// the constant 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AnfPoly {
    n: usize,
    monomials: BTreeSet<u32>,
}

impl AnfPoly {
    /// Builds a polynomial; a mask listed twice cancels.
    pub fn new(n: usize, monomials: impl IntoIterator<Item = u32>) -> Result<Self> {
        gf2::check_n(n)?;
        let mut set = BTreeSet::new();
        for u in monomials {
            gf2::check_vector(u, n)?;
            if !set.insert(u) {
                set.remove(&u);
            }
        }
        Ok(AnfPoly { n, monomials: set })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, monomials: Vec<u32>) -> Self {
        AnfPoly {
            n,
            monomials: monomials.into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> impl Iterator<Item = &u32> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, u: u32) -> bool {
        self.monomials.contains(&u)
    }

    /// Maximum Hamming weight of a monomial; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.monomials
            .iter()
            .map(|u| u.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Same monomials viewed in a space with more variables.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        AnfPoly::new(n, self.monomials.iter().copied())
    }

    /// Parses the text syntax. With `n = None` the number of variables is
    /// the largest index that occurs (at least 1).
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            max_var: 0,
            depth: 0,
        };
        let terms = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected character"));
        }
        let needed = p.max_var.max(1);
        let n = match n {
            Some(n) => {
                gf2::check_n(n)?;
                if needed > n && p.max_var > 0 {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("variable index {} exceeds n = {n}", p.max_var),
                    });
                }
                n
            }
            None => needed,
        };
        Ok(AnfPoly {
            n,
            monomials: terms,
        })
    }

    /// Canonical text: monomials ordered by (weight, mask), variables `x<k>`.
    pub fn to_text(&self, var: char) -> String {
        if self.monomials.is_empty() {
            return "0".into();
        }
        let mut ms: Vec<u32> = self.monomials.iter().copied().collect();
        ms.sort_by_key(|&u| (u.count_ones(), u));
        ms.iter()
            .map(|&u| {
                if u == 0 {
                    "1".to_string()
                } else {
                    (0..32)
                        .filter(|j| u >> j & 1 == 1)
                        .map(|j| format!("{var}{}", j + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('x'))
    }
}

impl fmt::Debug for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnfPoly(n={}, {})", self.n, self)
    }
}

type Terms = BTreeSet<u32>;

fn toggle(set: &mut Terms, u: u32) {
    if !set.insert(u) {
        set.remove(&u);
    }
}

// Caps the work of expanding products of long sums.
const MAX_PRODUCT_WORK: usize = 1 << 22;
const MAX_DEPTH: usize = 64;

fn multiply(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for &u in a {
        for &v in b {
            toggle(&mut out, u | v);
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_var: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            for u in self.term()? {
                toggle(&mut acc, u);
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'x' | b'z' | b'(' | b'0' | b'1') => {}
                _ => return Ok(acc),
            }
            let at = self.pos;
            let f = self.factor()?;
            if acc.len().saturating_mul(f.len()) > MAX_PRODUCT_WORK {
                return Err(Error::Parse {
                    pos: at,
                    msg: "product expands to too many terms".into(),
                });
            }
            acc = multiply(&acc, &f);
        }
    }

    fn factor(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(b'(') => {
                if self.depth == MAX_DEPTH {
                    return Err(self.err("parentheses nested too deeply"));
                }
                self.pos += 1;
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x' | b'z') => {
                self.pos += 1;
                let k = self.index()?;
                self.max_var = self.max_var.max(k);
                Ok(Terms::from([1u32 << (k - 1)]))
            }
            Some(b'0' | b'1') => {
                let start = self.pos;
                let c = self.src[self.pos];
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    self.pos = start;
                    return Err(self.err("only the constants 0 and 1 are allowed"));
                }
                Ok(if c == b'1' {
                    Terms::from([0])
                } else {
                    Terms::new()
                })
            }
            Some(_) => Err(self.err("expected a variable, constant or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let mut braced = false;
        if self.src.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            if self.src.get(self.pos) == Some(&b'{') {
                self.pos += 1;
                braced = true;
            }
        }
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a variable index"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let k: usize = digits.parse().unwrap_or(usize::MAX);
        if k == 0 || k > MAX_N {
            self.pos = start;
            return Err(self.err(&format!("variable index must be in 1..={MAX_N}")));
        }
        if braced {
            if self.src.get(self.pos) != Some(&b'}') {
                return Err(self.err("expected '}'"));
            }
            self.pos += 1;
        }
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn masks(p: &AnfPoly) -> Vec<u32> {
        p.monomials().copied().collect()
    }

    #[test]
    fn parses_sums_and_products() {
        let p = AnfPoly::parse("1 + x1 + x1*x2 + z3", None).unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(masks(&p), vec![0, 1, 3, 4]);
        let q = AnfPoly::parse("z1 z2 + z_3 + x_{2}", Some(4)).unwrap();
        assert_eq!(q.n(), 4);
        assert_eq!(masks(&q), vec![2, 3, 4]);
    }

    #[test]
    fn repeated_terms_cancel() {
        let p = AnfPoly::parse("x1 + x1 + x2*x2", None).unwrap();
        assert_eq!(masks(&p), vec![2]);
        assert!(AnfPoly::parse("0", Some(2)).unwrap().is_empty());
    }

    #[test]
    fn parentheses_expand() {
        let p = AnfPoly::parse("x1 (x2 + x3 + x2 x3) + 1", None).unwrap();
        assert_eq!(masks(&p), vec![0, 3, 5, 7]);
    }

    #[test]
    fn errors_report_position() {
        assert_eq!(
            AnfPoly::parse("x1 + + x2", None),
            Err(Error::Parse {
                pos: 5,
                msg: "expected a variable, constant or '('".into()
            })
        );
        assert!(matches!(
            AnfPoly::parse("x0", None),
            Err(Error::Parse { pos: 1, .. })
        ));
        assert!(matches!(
            AnfPoly::parse("x1 + 2", None),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            AnfPoly::parse("(x1", None),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(AnfPoly::parse("x5", Some(4)).is_err());
        assert!(AnfPoly::parse("", None).is_err());
    }

    #[test]
    fn canonical_printing() {
        let p = AnfPoly::new(4, [0b1100, 0, 0b0001, 0b0011, 0b1000]).unwrap();
        assert_eq!(p.to_string(), "1 + x1 + x4 + x1*x2 + x3*x4");
        assert_eq!(AnfPoly::parse(&p.to_string(), Some(4)).unwrap(), p);
        assert_eq!(AnfPoly::new(2, []).unwrap().to_string(), "0");
    }

    #[test]
    fn comments_are_skipped() {
        let p = AnfPoly::parse("# header\nx1 + # tail\n x2\n", None).unwrap();
        assert_eq!(masks(&p), vec![1, 2]);
    }
}
