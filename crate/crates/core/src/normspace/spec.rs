//! Declarative norm descriptions and their one-token text grammar.
//!
//! ```text
//! lp:P               P a decimal >= 1 or "inf"
//! mixed:P,Q          P where x1*x2 >= 0, Q where x1*x2 <= 0
//! polygon:x,y;x,y;…  counterclockwise unit-sphere vertices
//! regular:N          regular N-gon, N even >= 4, vertex at (1,0)
//! dual(SPEC)         dual norm of SPEC
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::Vector2;

/// An ℓp exponent, `1 <= p <= ∞`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const ONE: Exponent = Exponent(1.0);
    pub const TWO: Exponent = Exponent(2.0);
    pub const INF: Exponent = Exponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Spec(format!("exponent must be >= 1 or inf, got {p}")));
        }
        Ok(Exponent(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Hölder conjugate `p/(p−1)`, with `1 ↔ ∞`.
    pub fn conjugate(self) -> Exponent {
        if self.0 == 1.0 {
            Exponent::INF
        } else if self.0.is_infinite() {
            Exponent::ONE
        } else if self.0 == 2.0 {
            Exponent::TWO
        } else {
            Exponent(self.0 / (self.0 - 1.0))
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::INF);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| Error::Spec(format!("bad exponent token '{t}'")))?;
        if !p.is_finite() {
            return Err(Error::Spec(format!("bad exponent token '{t}'")));
        }
        Exponent::new(p).map_err(|_| Error::Spec(format!("exponent token '{t}' is below 1")))
    }
}

/// A two-dimensional norm, described declaratively.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum NormSpec {
    Lp(Exponent),
    /// `same` applies where `x1·x2 >= 0`, `opp` where `x1·x2 <= 0`.
    Mixed { same: Exponent, opp: Exponent },
    /// Counterclockwise vertex list of a centrally symmetric convex polygon.
    Polygon(Vec<Vector2>),
    RegularPolygon(usize),
    DualOf(Box<NormSpec>),
}

impl NormSpec {
    pub fn lp(p: f64) -> Result<Self> {
        Ok(NormSpec::Lp(Exponent::new(p)?))
    }

    pub fn mixed(same: f64, opp: f64) -> Result<Self> {
        Ok(NormSpec::Mixed { same: Exponent::new(same)?, opp: Exponent::new(opp)? })
    }

    pub fn dual_of(inner: NormSpec) -> Self {
        NormSpec::DualOf(Box::new(inner))
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Lp(p) => write!(f, "lp:{p}"),
            NormSpec::Mixed { same, opp } => write!(f, "mixed:{same},{opp}"),
            NormSpec::Polygon(vs) => {
                f.write_str("polygon:")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{},{}", v.x1, v.x2)?;
                }
                Ok(())
            }
            NormSpec::RegularPolygon(n) => write!(f, "regular:{n}"),
            NormSpec::DualOf(inner) => write!(f, "dual({inner})"),
        }
    }
}

impl From<NormSpec> for String {
    fn from(s: NormSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for NormSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn parse_coord(tok: &str) -> Result<f64> {
    let t = tok.trim();
    match t.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Spec(format!("bad coordinate token '{t}'"))),
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("dual(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Spec(format!("unbalanced parenthesis in '{s}'")))?;
            return Ok(NormSpec::DualOf(Box::new(inner.parse()?)));
        }
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Spec(format!("unknown norm token '{s}'")))?;
        match kind.trim() {
            "lp" => Ok(NormSpec::Lp(body.parse()?)),
            "mixed" => {
                let (p, q) = body
                    .split_once(',')
                    .ok_or_else(|| Error::Spec(format!("mixed needs two exponents, got '{body}'")))?;
                Ok(NormSpec::Mixed { same: p.parse()?, opp: q.parse()? })
            }
            "polygon" => {
                let mut vs = Vec::new();
                for pair in body.split(';').filter(|p| !p.trim().is_empty()) {
                    let (x, y) = pair
                        .split_once(',')
                        .ok_or_else(|| Error::Spec(format!("bad vertex token '{}'", pair.trim())))?;
                    vs.push(Vector2::new(parse_coord(x)?, parse_coord(y)?));
                }
                Ok(NormSpec::Polygon(vs))
            }
            "regular" => {
                let t = body.trim();
                let n: usize = t
                    .parse()
                    .map_err(|_| Error::Spec(format!("bad vertex count token '{t}'")))?;
                Ok(NormSpec::RegularPolygon(n))
            }
            other => Err(Error::Spec(format!("unknown norm token '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!("lp:inf".parse::<NormSpec>().unwrap(), NormSpec::Lp(Exponent::INF));
        assert_eq!(
            "mixed:inf,1".parse::<NormSpec>().unwrap(),
            NormSpec::Mixed { same: Exponent::INF, opp: Exponent::ONE }
        );
        assert_eq!("regular:12".parse::<NormSpec>().unwrap(), NormSpec::RegularPolygon(12));
        let p: NormSpec = "polygon:1,1;-1,1;-1,-1;1,-1".parse().unwrap();
        assert!(matches!(p, NormSpec::Polygon(ref v) if v.len() == 4));
        let d: NormSpec = "dual(mixed:2,1)".parse().unwrap();
        assert_eq!(d, NormSpec::dual_of(NormSpec::mixed(2.0, 1.0).unwrap()));
        let dd: NormSpec = "dual(dual(lp:3))".parse().unwrap();
        assert_eq!(dd.to_string(), "dual(dual(lp:3))");
    }

    #[test]
    fn display_round_trips() {
        for s in ["lp:2", "lp:inf", "lp:1.5", "mixed:2,1", "regular:12", "polygon:1,0;0,1;-1,0;0,-1", "dual(regular:8)"] {
            let spec: NormSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.to_string().parse::<NormSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn errors_name_the_token() {
        let e = "foo:3".parse::<NormSpec>().unwrap_err();
        assert!(e.to_string().contains("'foo'"), "{e}");
        let e = "lp:0.5".parse::<NormSpec>().unwrap_err();
        assert!(e.to_string().contains("'0.5'"), "{e}");
        let e = "mixed:2,abc".parse::<NormSpec>().unwrap_err();
        assert!(e.to_string().contains("'abc'"), "{e}");
        let e = "polygon:1,0;1".parse::<NormSpec>().unwrap_err();
        assert!(e.to_string().contains("'1'"), "{e}");
        assert!("dual(lp:2".parse::<NormSpec>().is_err());
        assert!("square".parse::<NormSpec>().is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(Exponent::ONE.conjugate(), Exponent::INF);
        assert_eq!(Exponent::INF.conjugate(), Exponent::ONE);
        assert_eq!(Exponent::TWO.conjugate(), Exponent::TWO);
        assert!((Exponent::new(3.0).unwrap().conjugate().value() - 1.5).abs() < 1e-15);
    }
}
