//! Text formats for truth tables, subspaces, vectorial functions and fields.
//!
//! * Truth tables: `tt:n=<n>:` followed by `2^n / 4` hex digits (one digit
//!   for `n = 1`). Digit `k` holds entries `4k..4k+3`, entry `4k` in its
//!   least significant bit. Whitespace between digits is ignored.
//! * Subspaces: one basis vector per line as a string of `n` characters
//!   `0`/`1`; character `j` (1-based) is the coordinate `x_j`.
//! * Vectorial functions: `vf:m=<m>:` followed by `2^m` hex values separated
//!   by commas or whitespace, or `m` lines each holding the ANF of one
//!   coordinate (first line is the coordinate `F_1`).
//! * Fields: `gf2m:m=<m>` or `gf2m:m=<m>,mod=<hex>`.
//!
//! In every multi-line format, `#` starts a comment that runs to the end of
//! the line.

use std::sync::Arc;

use crate::anf::AnfPoly;
use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::{self, span, Subspace};
use crate::gf2m::Field;
use crate::vectorial::VectorialFunction;

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

/// Splits `text` into lines with comments removed, keeping the byte offset
/// of each line start.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split('\n').filter_map(move |line| {
        let start = offset;
        offset += line.len() + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((start + line.find(body).unwrap_or(0), body))
    })
}

/// Parses `<prefix>n=<digits>:` and returns `(n, rest_offset)`.
fn parse_header(text: &str, prefix: &str, key: &str) -> Result<(usize, usize)> {
    let lead = text.len() - text.trim_start().len();
    let t = &text[lead..];
    if !t.starts_with(prefix) {
        return Err(perr(lead, format!("expected '{prefix}'")));
    }
    let mut pos = lead + prefix.len();
    let key_eq = format!("{key}=");
    if !text[pos..].starts_with(&key_eq) {
        return Err(perr(pos, format!("expected '{key_eq}'")));
    }
    pos += key_eq.len();
    let digits: String = text[pos..]
        .chars()
        .take_while(|c| c.is_ascii_digit())
        .collect();
    if digits.is_empty() {
        return Err(perr(pos, "expected a number"));
    }
    let n: usize = digits.parse().map_err(|_| perr(pos, "number too large"))?;
    pos += digits.len();
    if !text[pos..].starts_with(':') {
        return Err(perr(pos, "expected ':'"));
    }
    Ok((n, pos + 1))
}

/// Serializes a truth table.
pub fn tt_to_string(f: &BooleanFunction) -> String {
    let digits = (f.len() / 4).max(1);
    let mut s = format!("tt:n={}:", f.n());
    for k in 0..digits {
        let v = (0..4)
            .filter(|&i| 4 * k + i < f.len() && f.get((4 * k + i) as u32))
            .fold(0u32, |acc, i| acc | 1 << i);
        s.push(char::from_digit(v, 16).expect("nibble"));
    }
    s
}

/// Parses a truth table in the `tt:` format.
pub fn parse_tt(text: &str) -> Result<BooleanFunction> {
    let (n, mut pos) = parse_header(text, "tt:", "n")?;
    gf2::check_n(n)?;
    let len = 1usize << n;
    let digits = (len / 4).max(1);
    let mut nibbles = Vec::with_capacity(digits);
    for (i, c) in text[pos..].char_indices() {
        if c.is_whitespace() {
            continue;
        }
        let v = c
            .to_digit(16)
            .ok_or_else(|| perr(pos + i, format!("invalid hex digit {c:?}")))?;
        if nibbles.len() == digits {
            return Err(perr(pos + i, "too many hex digits"));
        }
        nibbles.push(v);
    }
    pos = text.len();
    if nibbles.len() != digits {
        return Err(perr(
            pos,
            format!("expected {digits} hex digits, found {}", nibbles.len()),
        ));
    }
    if len < 4 && nibbles[0] >> len != 0 {
        return Err(perr(pos, "bits set beyond the table length"));
    }
    BooleanFunction::from_fn(n, |x| nibbles[x as usize / 4] >> (x % 4) & 1 == 1)
}

/// Reads a function given either as a `tt:` table or as an ANF.
pub fn parse_function(text: &str, n: Option<usize>) -> Result<BooleanFunction> {
    if text.trim_start().starts_with("tt:") {
        let f = parse_tt(text)?;
        if let Some(n) = n {
            if n != f.n() {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.n(),
                });
            }
        }
        Ok(f)
    } else {
        BooleanFunction::from_anf(&AnfPoly::parse(text, n)?)
    }
}

pub fn subspace_to_string(s: &Subspace) -> String {
    s.basis()
        .iter()
        .map(|&b| gf2::bit_string(b, s.ambient_dim()) + "\n")
        .collect()
}

/// Parses a subspace, one basis vector per line. `n` is needed only when
/// the text holds no vectors.
pub fn parse_subspace(text: &str, n: Option<usize>) -> Result<Subspace> {
    let mut vectors = Vec::new();
    let mut width = n;
    for (start, line) in content_lines(text) {
        let w = *width.get_or_insert(line.len());
        if vectors.is_empty() {
            gf2::check_n(w)
                .map_err(|_| perr(start, format!("{w} bits exceed the supported dimension")))?;
        }
        if line.len() != w {
            return Err(perr(
                start,
                format!("expected {w} bits, found {}", line.len()),
            ));
        }
        let mut v = 0u32;
        for (j, c) in line.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => v |= 1 << j,
                _ => return Err(perr(start + j, "expected '0' or '1'")),
            }
        }
        vectors.push(v);
    }
    let n = width.ok_or_else(|| perr(0, "empty subspace needs an explicit dimension"))?;
    let s = span(&vectors, n)?;
    if s.dim() != vectors.len() {
        return Err(perr(0, "rows are linearly dependent"));
    }
    Ok(s)
}

pub fn vf_to_string(f: &VectorialFunction) -> String {
    let body: Vec<String> = f.table().iter().map(|v| format!("{v:x}")).collect();
    format!("vf:m={}:{}", f.m(), body.join(","))
}

/// Coordinate-ANF form of a vectorial function, one line per coordinate.
pub fn vf_to_anf_lines(f: &VectorialFunction) -> String {
    f.coordinates()
        .iter()
        .map(|c| c.to_anf().to_string() + "\n")
        .collect()
}

/// Parses either vectorial format.
pub fn parse_vf(text: &str) -> Result<VectorialFunction> {
    if text.trim_start().starts_with("vf:") {
        let (m, pos) = parse_header(text, "vf:", "m")?;
        gf2::check_n(m)?;
        let mut table = Vec::with_capacity(1 << m);
        let mut offset = pos;
        for tok in text[pos..].split(|c: char| c == ',' || c.is_whitespace()) {
            if !tok.is_empty() {
                let v = u32::from_str_radix(tok, 16)
                    .map_err(|_| perr(offset, format!("invalid hex value {tok:?}")))?;
                gf2::check_vector(v, m).map_err(|_| perr(offset, "value out of range"))?;
                table.push(v);
            }
            offset += tok.len() + 1;
        }
        if table.len() != 1 << m {
            return Err(perr(
                text.len(),
                format!("expected {} values, found {}", 1 << m, table.len()),
            ));
        }
        VectorialFunction::new(m, table)
    } else {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        let m = lines.len();
        if m == 0 {
            return Err(perr(0, "no coordinate functions"));
        }
        gf2::check_n(m)?;
        let coords = lines
            .iter()
            .map(|&(start, line)| {
                AnfPoly::parse(line, Some(m))
                    .map_err(|e| match e {
                        Error::Parse { pos, msg } => perr(start + pos, msg),
                        other => other,
                    })
                    .and_then(|p| BooleanFunction::from_anf(&p))
            })
            .collect::<Result<Vec<_>>>()?;
        VectorialFunction::from_coordinates(&coords)
    }
}

/// Parses `gf2m:m=<m>[,mod=<hex>]`.
pub fn parse_field(text: &str) -> Result<Arc<Field>> {
    let t = text.trim();
    let rest = t
        .strip_prefix("gf2m:m=")
        .ok_or_else(|| perr(0, "expected 'gf2m:m='"))?;
    let (m_str, modulus) = match rest.split_once(',') {
        Some((m, tail)) => {
            let hex = tail
                .strip_prefix("mod=")
                .ok_or_else(|| perr(7 + m.len() + 1, "expected 'mod='"))?;
            let hex = hex.strip_prefix("0x").unwrap_or(hex);
            let v = u32::from_str_radix(hex, 16)
                .map_err(|_| perr(7 + m.len() + 5, "invalid hex modulus"))?;
            (m, Some(v))
        }
        None => (rest, None),
    };
    let m: usize = m_str.parse().map_err(|_| perr(7, "invalid field degree"))?;
    match modulus {
        Some(p) => Field::with_modulus(m, p),
        None => Field::new(m),
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn overlong_subspace_rows_are_rejected() {
        let row = "1".repeat(40);
        assert!(matches!(
            parse_subspace(&row, None),
            Err(Error::Parse { .. })
        ));
        assert!(parse_subspace("101", Some(40)).is_err());
    }

    use super::*;

    #[test]
    fn tt_round_trip() {
        let f = BooleanFunction::from_fn(5, |x| x % 3 == 1).unwrap();
        let s = tt_to_string(&f);
        assert_eq!(parse_tt(&s).unwrap(), f);
        let g = BooleanFunction::from_fn(1, |x| x == 1).unwrap();
        assert_eq!(tt_to_string(&g), "tt:n=1:2");
        assert_eq!(parse_tt("tt:n=1:2").unwrap(), g);
    }

    #[test]
    fn tt_digit_order() {
        // x1 x2 on two variables: only entry 3 is set
        let f = parse_tt("tt:n=2:8").unwrap();
        assert_eq!(f.to_anf().to_string(), "x1*x2");
        let h = parse_tt("tt:n=3:0 1").unwrap();
        assert!(h.get(4) && h.weight() == 1);
    }

    #[test]
    fn tt_errors() {
        assert!(matches!(parse_tt("tt:n=2:"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_tt("tt:n=2:g"),
            Err(Error::Parse { pos: 7, .. })
        ));
        assert!(matches!(
            parse_tt("tt:n=2:12"),
            Err(Error::Parse { pos: 8, .. })
        ));
        assert!(parse_tt("tt:n=1:4").is_err());
        assert!(parse_tt("tt:n=0:1").is_err());
        assert!(parse_tt("tx:n=2:1").is_err());
    }

    #[test]
    fn subspace_text() {
        let s = parse_subspace("# rows\n1000\n0110\n", None).unwrap();
        assert_eq!(s.ambient_dim(), 4);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(0b0001) && s.contains(0b0110));
        assert_eq!(parse_subspace(&subspace_to_string(&s), None).unwrap(), s);
        assert!(parse_subspace("10\n100\n", None).is_err());
        assert!(parse_subspace("12\n", None).is_err());
        assert!(parse_subspace("10\n10\n", None).is_err());
        assert_eq!(parse_subspace("", Some(3)).unwrap(), Subspace::zero(3));
    }

    #[test]
    fn vf_formats() {
        let f = VectorialFunction::new(2, vec![0, 2, 3, 1]).unwrap();
        assert_eq!(vf_to_string(&f), "vf:m=2:0,2,3,1");
        assert_eq!(parse_vf("vf:m=2: 0, 2 ,3,1").unwrap(), f);
        assert_eq!(parse_vf(&vf_to_anf_lines(&f)).unwrap(), f);
        assert!(parse_vf("vf:m=2:0,1,2").is_err());
        assert!(parse_vf("vf:m=2:0,1,2,4").is_err());
        let id = parse_vf("x1 # first\nx2\n").unwrap();
        assert_eq!(id, VectorialFunction::identity(2).unwrap());
        assert!(matches!(
            parse_vf("x1\nx2 + +\n"),
            Err(Error::Parse { pos: 8, .. })
        ));
    }

    #[test]
    fn field_spec() {
        let f = parse_field("gf2m:m=6").unwrap();
        assert_eq!(f.modulus(), 0x43);
        let g = parse_field("gf2m:m=3,mod=d").unwrap();
        assert_eq!(g.modulus(), 0b1101);
        assert!(parse_field("gf2m:m=3,mod=9").is_err());
        assert!(parse_field("gf2:m=3").is_err());
        assert_eq!(parse_field(&f.spec_string()).unwrap().modulus(), 0x43);
    }
}
