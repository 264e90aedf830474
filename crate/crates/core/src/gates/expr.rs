//! Gate-expression parser.
//!
//! ```text
//! expr    = tensor { ("·" | "*") tensor }
//! tensor  = factor { ["⊗" | "x"] factor }      juxtaposition is also ⊗
//! factor  = atom { "†" | "^" int }
//! atom    = name | "(" expr ")"
//! ```
//!
//! `⊗` binds tighter than `·`, both left-associative. Names are matched
//! longest-first, so `SWAP` wins over `S` and `SH` reads as `S⊗H`.

use super::{constant, names_longest_first};
use crate::error::{Error, Result};
use crate::linal::GateMatrix;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: Vec<&'static str>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.rest().chars().next() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn at_atom_start(&mut self) -> bool {
        self.skip_ws();
        let r = self.rest();
        r.starts_with('(') || r.starts_with("Ph") || self.names.iter().any(|n| r.starts_with(n))
    }

    fn expr(&mut self) -> Result<GateMatrix> {
        let mut acc = self.tensor()?;
        loop {
            if self.eat("·") || self.eat("*") {
                let rhs = self.tensor()?;
                let at = self.pos;
                acc = acc.try_mul(&rhs).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn tensor(&mut self) -> Result<GateMatrix> {
        let mut acc = self.factor()?;
        loop {
            let explicit = self.eat("⊗") || self.eat("x");
            if explicit || self.at_atom_start() {
                let rhs = self.factor()?;
                let at = self.pos;
                acc = acc.kron(&rhs).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<GateMatrix> {
        let mut m = self.atom()?;
        loop {
            if self.eat("†") {
                m = m.adjoint();
            } else if self.eat("^") {
                self.skip_ws();
                let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
                if digits.is_empty() {
                    return self.err("expected exponent");
                }
                self.pos += digits.len();
                let k: u32 = digits.parse().map_err(|_| Error::Parse { pos: self.pos, msg: "bad exponent".into() })?;
                m = m.pow(k);
            } else {
                return Ok(m);
            }
        }
    }

    fn atom(&mut self) -> Result<GateMatrix> {
        self.skip_ws();
        if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return self.err("expected ')'");
            }
            return Ok(inner);
        }
        let r = self.rest();
        if let Some(after) = r.strip_prefix("Ph") {
            let digits: String = after.chars().take_while(|c| c.is_ascii_digit()).collect();
            if !digits.is_empty() {
                let name = &r[..2 + digits.len()];
                self.pos += name.len();
                return constant(name).or_else(|_| self.err(format!("bad phase gate '{name}'")));
            }
        }
        for name in &self.names {
            if r.starts_with(name) {
                self.pos += name.len();
                return constant(name);
            }
        }
        if r.is_empty() {
            self.err("unexpected end of expression")
        } else {
            self.err(format!("unknown gate at '{}'", r.chars().take(8).collect::<String>()))
        }
    }
}

/// Parses a gate expression such as `"CNOT12·SI"` or `"CZ†·SWAP"`.
pub fn parse_expr(src: &str) -> Result<GateMatrix> {
    let mut p = Parser { src, pos: 0, names: names_longest_first() };
    let m = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    Ok(m)
}

/// Parses a comma-separated list of gate expressions, optionally wrapped in
/// `⟨…⟩` or `<…>`.
pub fn parse_generator_list(src: &str) -> Result<Vec<GateMatrix>> {
    split_top_level(strip_brackets(src)).into_iter().map(|g| parse_expr(g.trim())).collect()
}

/// Generators of a named single-qubit group: `P1`, `C1`, `C1'`, `2I`,
/// `Q(r)` (also `Q^(r)` or `Qr`).
fn single_qubit_group(name: &str) -> Option<Vec<GateMatrix>> {
    let names: &[&str] = match name {
        "P1" => &["X", "Z"],
        "C1" => &["S", "H"],
        "C1'" | "C1′" => &["Z", "F"],
        "2I" => &["Z", "PHI"],
        _ => {
            let r = name.strip_prefix('Q')?;
            let r = r.strip_prefix('^').unwrap_or(r);
            let r = r.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(r);
            let r: u32 = r.parse().ok()?;
            return (1..=16).contains(&r).then(|| super::q(r));
        }
    };
    Some(names.iter().map(|n| constant(n).expect("builtin")).collect())
}

/// Expands `A⊗B` for named single-qubit groups into `a⊗I` and `I⊗b`, and
/// `P2` into the two-qubit Pauli generators.
fn group_item(item: &str) -> Option<Vec<GateMatrix>> {
    if item == "P2" {
        return Some(super::pauli2_generators());
    }
    let (a, b) = item.split_once('⊗')?;
    let (ga, gb) = (single_qubit_group(a.trim())?, single_qubit_group(b.trim())?);
    let id = GateMatrix::identity(2);
    let left = ga.iter().map(|g| g.kron(&id).expect("2x2"));
    let right = gb.iter().map(|g| id.kron(g).expect("2x2"));
    Some(left.chain(right).collect())
}

/// Like [`parse_generator_list`], but items may also name groups:
/// `P2`, or a tensor product of `P1`, `C1`, `C1'`, `Q(r)`, `2I`.
///
/// `"⟨Q(2)⊗C1, CNOT⟩"` yields `Ph4 I, XI, IS, IH, CNOT`.
pub fn parse_group_generators(src: &str) -> Result<Vec<GateMatrix>> {
    let s = strip_brackets(src);
    let mut out = Vec::new();
    for item in split_top_level(s) {
        let item = item.trim();
        match group_item(item) {
            Some(gens) => out.extend(gens),
            None => out.push(parse_expr(item)?),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty generator list".into() });
    }
    Ok(out)
}

fn strip_brackets(src: &str) -> &str {
    let s = src.trim();
    s.strip_prefix('⟨')
        .and_then(|x| x.strip_suffix('⟩'))
        .or_else(|| s.strip_prefix('<').and_then(|x| x.strip_suffix('>')))
        .unwrap_or(s)
}

/// Splits on commas that are not nested inside parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(&s[start..]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> GateMatrix {
        constant(name).unwrap()
    }

    #[test]
    fn group_names_expand() {
        let gens = parse_group_generators("⟨Q(2)⊗C1', CNOT⟩").unwrap();
        assert_eq!(gens.len(), 5);
        assert_eq!(gens[0], super::super::ph(4).kron(&g("I")).unwrap());
        assert_eq!(gens[3], parse_expr("IF").unwrap());
        assert_eq!(parse_group_generators("P2, BELL").unwrap().len(), 5);
        assert_eq!(parse_group_generators("Q^(3)⊗P1").unwrap()[0], parse_expr("Ph8 I").unwrap());
        assert!(parse_group_generators("Q(2)⊗Foo").is_err());
        assert!(parse_group_generators("⟨⟩").is_err());
    }

    #[test]
    fn juxtaposition_is_tensor() {
        assert_eq!(parse_expr("SH").unwrap(), g("S").kron(&g("H")).unwrap());
        assert_eq!(parse_expr("S⊗H").unwrap(), parse_expr("S x H").unwrap());
        assert_eq!(parse_expr("SWAP").unwrap(), g("SWAP"));
    }

    #[test]
    fn precedence_and_postfix() {
        let want = g("CNOT12").mul(&g("S").kron(&g("I")).unwrap());
        assert_eq!(parse_expr("CNOT12·SI").unwrap(), want);
        assert_eq!(parse_expr("CNOT12*S⊗I").unwrap(), want);
        assert_eq!(parse_expr("CZ†·SWAP").unwrap(), g("CZ").adjoint().mul(&g("SWAP")));
        assert_eq!(parse_expr("K^2").unwrap(), g("K").mul(&g("K")));
        assert_eq!(parse_expr("(S·H)I").unwrap(), g("S").mul(&g("H")).kron(&g("I")).unwrap());
        assert_eq!(parse_expr("Ph8⊗I").unwrap(), super::super::ph(8).kron(&g("I")).unwrap());
    }

    #[test]
    fn errors_carry_position() {
        match parse_expr("SI·Q") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, "SI·".len()),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("SWAP⊗I").is_err());
        assert!(parse_expr("(SI").is_err());
        assert!(parse_expr("S·SI").is_err());
    }

    #[test]
    fn generator_lists() {
        let v = parse_generator_list("⟨SI, HI, CNOT12·(SI)⟩").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(parse_generator_list("<XI,ZI>").unwrap().len(), 2);
    }
}
