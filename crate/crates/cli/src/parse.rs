//! Text syntax for surfaces, divisor classes and bundles.
//!
//! Divisors are signed integer combinations of basis symbols (`H`, `F`,
//! `E1`..`E8`) and `K`; on `P²` the form `O(n)` is accepted as well. Bundles:
//!
//! ```text
//! sum(D, D)    [D]⊕[D]    O(a)⊕O(b)
//! ext(D, D; degZ=n; split|nonsplit|unknown)
//! blowup(D, D; points=n)
//! tangent    tangent(k)
//! ```
//!
//! Everything the renderer prints for a single bundle parses back to it.

use std::fmt;

use chern_lattice_core::bundle::{Bundle, Splitting};
use chern_lattice_core::surface::{canonical_class, Divisor, Surface};

/// A syntax error at a character offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Zero-based character offset.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

type Result<T> = std::result::Result<T, ParseError>;

/// `hirzebruch:<e>`, `dp:<d>` (`1 ≤ d ≤ 7`) or `p2`.
pub fn parse_surface(text: &str) -> std::result::Result<Surface, String> {
    let bad = || {
        format!("bad surface selector {text:?}: expected hirzebruch:<e>, dp:<d> with 1 <= d <= 7, or p2")
    };
    match text.split_once(':') {
        None if text == "p2" => Ok(Surface::ProjectivePlane),
        Some(("hirzebruch", e)) => e.parse().map(Surface::hirzebruch).map_err(|_| bad()),
        Some(("dp", d)) => {
            let d: u8 = d.parse().map_err(|_| bad())?;
            Surface::del_pezzo(d).map_err(|_| bad())
        }
        _ => Err(bad()),
    }
}

pub fn parse_divisor(text: &str, surface: Surface) -> Result<Divisor> {
    let mut p = Parser::new(text, surface);
    let d = p.divisor()?;
    p.finish()?;
    Ok(d)
}

pub fn parse_bundle(text: &str, surface: Surface) -> Result<Bundle> {
    let mut p = Parser::new(text, surface);
    let b = p.bundle()?;
    p.finish()?;
    Ok(b)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    surface: Surface,
}

impl Parser {
    fn new(text: &str, surface: Surface) -> Parser {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            surface,
        }
    }

    fn error<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(ParseError {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, word: &str) -> bool {
        self.skip_ws();
        let n = word.chars().count();
        let matches = self.chars.len() >= self.pos + n
            && word
                .chars()
                .zip(&self.chars[self.pos..])
                .all(|(a, b)| a == *b);
        if matches {
            self.pos += n;
        }
        matches
    }

    fn expect(&mut self, word: &str, context: &str) -> Result<()> {
        if self.eat(word) {
            Ok(())
        } else {
            let found = match self.peek() {
                Some(c) => format!("found {c:?}"),
                None => "found end of input".into(),
            };
            self.error(self.pos, format!("expected {word:?} {context}, {found}"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(
                self.pos,
                format!("unexpected {c:?} after a complete expression"),
            ),
        }
    }

    fn digits(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let sign = if self.eat("-") || self.eat("−") {
            -1
        } else {
            1
        };
        self.skip_ws();
        match self.digits() {
            Some(n) => Ok(sign * n),
            None => self.error(start, "expected an integer"),
        }
    }

    fn sign(&mut self) -> Option<i64> {
        if self.eat("+") {
            Some(1)
        } else if self.eat("-") || self.eat("−") {
            Some(-1)
        } else {
            None
        }
    }

    /// A class: an optional leading sign, then signed terms.
    fn divisor(&mut self) -> Result<Divisor> {
        self.skip_ws();
        let start = self.pos;
        let mut total = Divisor::zero(self.surface);
        let mut sign = self.sign().unwrap_or(1);
        loop {
            total = total + sign * self.term()?;
            match self.sign() {
                Some(s) => sign = s,
                None => break,
            }
        }
        if self.pos == start {
            return self.error(start, "expected a divisor class");
        }
        Ok(total)
    }

    /// `[n]SYMBOL`, a bare `0`, or `O(n)` on `P²`.
    fn term(&mut self) -> Result<Divisor> {
        self.skip_ws();
        let start = self.pos;
        if self.surface == Surface::ProjectivePlane && self.eat("O(") {
            let n = self.integer()?;
            self.expect(")", "to close O(n)")?;
            return Ok(Divisor::plane(n));
        }
        let coeff = self.digits();
        self.skip_ws();
        let symbol = self.symbol();
        match (coeff, symbol) {
            (c, Some(name)) => {
                let class = self.class_of(&name, start)?;
                Ok(c.unwrap_or(1) * class)
            }
            (Some(0), None) => Ok(Divisor::zero(self.surface)),
            (Some(_), None) => self.error(start, "a nonzero coefficient needs a basis symbol"),
            (None, None) => self.error(start, "expected a term such as 2H, E1 or -K"),
        }
    }

    fn symbol(&mut self) -> Option<String> {
        let start = self.pos;
        if self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_uppercase())
        {
            self.pos += 1;
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn class_of(&self, name: &str, at: usize) -> Result<Divisor> {
        if name == "K" {
            return Ok(canonical_class(self.surface));
        }
        let basis = self.surface.basis_names();
        match basis.iter().position(|b| *b == name) {
            Some(i) => Ok(Divisor::basis(self.surface, i)),
            None => self.error(
                at,
                format!(
                    "symbol {name} is not in the basis of {} ({}, K)",
                    self.surface,
                    basis.join(", ")
                ),
            ),
        }
    }

    fn pair(&mut self, context: &str) -> Result<(Divisor, Divisor)> {
        let a = self.divisor()?;
        self.expect(",", context)?;
        let b = self.divisor()?;
        Ok((a, b))
    }

    fn keyed(&mut self, key: &str) -> Result<i64> {
        self.expect(key, "")?;
        self.expect("=", &format!("after {key}"))?;
        self.integer()
    }

    fn bundle(&mut self) -> Result<Bundle> {
        self.skip_ws();
        let start = self.pos;
        let built = if self.eat("tangent") {
            if self.eat("(") {
                let k = self.integer()?;
                self.expect(")", "to close tangent(k)")?;
                Ok(Bundle::tangent_twist(k))
            } else {
                Ok(Bundle::tangent())
            }
            .and_then(|b| self.on_surface(b))
        } else if self.eat("sum(") {
            let (l, m) = self.pair("between the two summands of sum")?;
            self.expect(")", "to close sum (it takes exactly two classes)")?;
            Bundle::direct_sum(l, m)
        } else if self.eat("ext(") {
            let (sub, quot) = self.pair("between sub and quotient of ext")?;
            self.expect(";", "after the classes of ext")?;
            let deg_z = self.keyed("degZ")?;
            self.expect(";", "after degZ")?;
            let split = if self.eat("nonsplit") {
                Splitting::NonSplit
            } else if self.eat("split") {
                Splitting::Split
            } else if self.eat("unknown") {
                Splitting::Unknown
            } else {
                return self.error(self.pos, "expected split, nonsplit or unknown");
            };
            self.expect(")", "to close ext")?;
            Bundle::extension(sub, quot, deg_z, split)
        } else if self.eat("blowup(") {
            let (sub, quot) = self.pair("between the classes of blowup")?;
            self.expect(";", "after the classes of blowup")?;
            let points = self.keyed("points")?;
            self.expect(")", "to close blowup")?;
            Bundle::blow_up_extension(sub, quot, points)
        } else {
            let l = self.summand()?;
            self.expect("⊕", "between summands")?;
            let m = self.summand()?;
            Bundle::direct_sum(l, m)
        };
        built.or_else(|e| self.error(start, e.to_string()))
    }

    fn on_surface(&self, b: Bundle) -> chern_lattice_core::Result<Bundle> {
        if self.surface == Surface::ProjectivePlane {
            Ok(b)
        } else {
            Err(chern_lattice_core::Error::TangentOffPlane {
                surface: self.surface,
            })
        }
    }

    /// `[D]`, or `O(n)` on `P²`.
    fn summand(&mut self) -> Result<Divisor> {
        self.skip_ws();
        if self.eat("[") {
            let d = self.divisor()?;
            self.expect("]", "to close a bracketed summand")?;
            return Ok(d);
        }
        if self.surface == Surface::ProjectivePlane && self.peek() == Some('O') {
            return self.term();
        }
        self.error(
            self.pos,
            "expected a bundle: sum(..), ext(..), blowup(..), tangent or [D]⊕[D]",
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chern_lattice_core::bundle::Shape;

    fn hz(e: u32) -> Surface {
        Surface::hirzebruch(e)
    }

    fn dp(d: u8) -> Surface {
        Surface::del_pezzo(d).unwrap()
    }

    #[test]
    fn surfaces() {
        assert_eq!(parse_surface("p2"), Ok(Surface::ProjectivePlane));
        assert_eq!(parse_surface("hirzebruch:3"), Ok(hz(3)));
        assert_eq!(parse_surface("dp:7"), Ok(dp(7)));
        for bad in ["dp:0", "dp:8", "hirzebruch:-1", "p3", "dp", ""] {
            assert!(parse_surface(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn sum_on_hirzebruch() {
        let b = parse_bundle("sum(H+2F, H+3F)", hz(1)).unwrap();
        let Shape::DirectSum(l, m) = *b.shape() else {
            panic!()
        };
        assert_eq!((l.coeffs(), m.coeffs()), (&[1, 2][..], &[1, 3][..]));
    }

    #[test]
    fn canonical_multiples() {
        let b = parse_bundle("sum(-K, -2K)", dp(1)).unwrap();
        let k = canonical_class(dp(1));
        assert_eq!(b, Bundle::direct_sum(-k, -2 * k).unwrap());
        let d = parse_divisor("-2K + E8", dp(1)).unwrap();
        assert_eq!(d.coeffs(), &[6, -2, -2, -2, -2, -2, -2, -2, -1]);
    }

    #[test]
    fn arity_and_symbol_errors() {
        let e = parse_bundle("sum(H+F)", hz(0)).unwrap_err();
        assert_eq!(e.pos, 7);
        assert!(e.msg.contains("between the two summands"), "{}", e.msg);
        let e = parse_divisor("H+E9", dp(1)).unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.msg.contains("E9"));
        assert!(parse_divisor("F", dp(3)).is_err());
        assert!(parse_divisor("3", hz(0)).is_err());
        assert!(parse_bundle("tangent", hz(0)).is_err());
        assert!(parse_bundle("sum(H, F) junk", hz(0)).is_err());
        assert!(parse_bundle("ext(H, F; degZ=-1; nonsplit)", hz(0)).is_err());
    }

    #[test]
    fn every_rendered_shape() {
        let cases = [
            ("[H+F]⊕[2H+2F]", hz(0)),
            ("ext(2H, H+3F; degZ=0; nonsplit)", hz(0)),
            ("ext(H, H+F; degZ=2; unknown)", hz(1)),
            ("blowup(0, -2K; points=3)", dp(1)),
            ("blowup(-K, -K; points=1)", dp(2)),
            ("[-K]⊕[6H-2E1-2E2-2E3-2E4-2E5-2E6-2E7-E8]", dp(1)),
            ("O(1)⊕O(3)", Surface::ProjectivePlane),
            (
                "ext(O(2), O(2); degZ=1; nonsplit)",
                Surface::ProjectivePlane,
            ),
            ("tangent", Surface::ProjectivePlane),
            ("tangent(-2)", Surface::ProjectivePlane),
        ];
        for (text, s) in cases {
            let b = parse_bundle(text, s).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(b.to_string(), text);
        }
    }

    #[test]
    fn whitespace_and_unicode_minus() {
        let a = parse_divisor(" 2 H − 3 F ", hz(2)).unwrap();
        assert_eq!(a.coeffs(), &[2, -3]);
        let b = parse_bundle("[ H+F ] ⊕ [ H+2F ]", hz(0)).unwrap();
        assert_eq!(b.to_string(), "[H+F]⊕[H+2F]");
    }
}
