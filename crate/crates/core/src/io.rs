//! Society files and textual coordinate formats.
//!
//! A society file is JSON:
//!
//! ```json
//! {"arcs": [{"left": "3/7", "length": "2/7", "closure": "half_open"}],
//!  "name": "example"}
//! ```
//!
//! Coordinate strings decide the numeric kind of the whole file: any string
//! with a `/` is rational, any string with a decimal point or exponent is
//! float, bare integers are neutral. A file mixing rational and float
//! strings is rejected.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arc::{Arc, Closure};
use crate::coord::SpectrumCoord;
use crate::counting::StepFunction;
use crate::error::{Error, Result};
use crate::society::{AnySociety, Society};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Token {
    Rational,
    Decimal,
    Neutral,
}

fn classify(s: &str) -> Token {
    if s.contains('/') {
        Token::Rational
    } else if s.contains(['.', 'e', 'E']) {
        Token::Decimal
    } else {
        Token::Neutral
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::BadCoordinate(s.to_string()))
}

fn parse_float(s: &str) -> Result<f64> {
    let x = f64::from_str(s.trim()).map_err(|_| Error::BadCoordinate(s.to_string()))?;
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    Ok(x)
}

/// Parse one coordinate string; bare integers come back rational.
pub fn parse_coord_string(s: &str) -> Result<SpectrumCoord> {
    match classify(s.trim()) {
        Token::Decimal => Ok(SpectrumCoord::Float(parse_float(s)?)),
        _ => Ok(SpectrumCoord::Rational(parse_rational(s)?)),
    }
}

/// "numer/denom", always with the slash so the kind survives a round trip.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Shortest round-trip float, forced to carry a '.' or exponent so the kind
/// survives a round trip.
pub fn format_float(x: f64) -> String {
    let s = format!("{x}");
    if s.contains(['.', 'e', 'E']) {
        s
    } else {
        format!("{s}.0")
    }
}

#[derive(Serialize, Deserialize)]
struct RawArc {
    left: String,
    length: String,
    closure: Closure,
}

#[derive(Serialize, Deserialize)]
struct RawSociety {
    arcs: Vec<RawArc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

/// A society read from a file, with its optional name.
#[derive(Clone, Debug)]
pub struct LoadedSociety {
    pub society: AnySociety,
    pub name: Option<String>,
}

pub fn parse_society(json: &str) -> Result<LoadedSociety> {
    parse_society_opts(json, None)
}

/// Parse a society file. `widen` pads every arc of a float-kind society by
/// that amount on each side, so arcs meant to touch still intersect after
/// decimal round-off; it is ignored for rational files.
pub fn parse_society_opts(json: &str, widen: Option<f64>) -> Result<LoadedSociety> {
    let raw: RawSociety =
        serde_json::from_str(json).map_err(|e| Error::MalformedFile(e.to_string()))?;
    if raw.arcs.is_empty() {
        return Err(Error::EmptySociety);
    }

    let mut has_rational = false;
    let mut has_decimal = false;
    for a in &raw.arcs {
        for s in [&a.left, &a.length] {
            match classify(s.trim()) {
                Token::Rational => has_rational = true,
                Token::Decimal => has_decimal = true,
                Token::Neutral => {}
            }
        }
    }
    if has_rational && has_decimal {
        return Err(Error::MixedKinds);
    }

    let society = if has_decimal {
        let eps = widen.unwrap_or(0.0);
        let arcs = raw
            .arcs
            .iter()
            .map(|a| {
                let left = parse_float(&a.left)?;
                let length = parse_float(&a.length)?;
                // keep the original length if padding would reach a full turn
                let padded = if length + 2.0 * eps < 1.0 {
                    length + 2.0 * eps
                } else {
                    length
                };
                Arc::new(left - eps, padded, a.closure)
            })
            .collect::<Result<Vec<_>>>()?;
        AnySociety::Float(Society::new(arcs)?)
    } else {
        let arcs = raw
            .arcs
            .iter()
            .map(|a| Arc::new(parse_rational(&a.left)?, parse_rational(&a.length)?, a.closure))
            .collect::<Result<Vec<_>>>()?;
        AnySociety::Rational(Society::new(arcs)?)
    };

    Ok(LoadedSociety {
        society,
        name: raw.name,
    })
}

pub fn society_to_json(society: &AnySociety, name: Option<&str>) -> String {
    let arcs = match society {
        AnySociety::Rational(s) => s
            .arcs()
            .iter()
            .map(|a| RawArc {
                left: format_rational(a.left()),
                length: format_rational(a.length()),
                closure: a.closure(),
            })
            .collect(),
        AnySociety::Float(s) => s
            .arcs()
            .iter()
            .map(|a| RawArc {
                left: format_float(*a.left()),
                length: format_float(*a.length()),
                closure: a.closure(),
            })
            .collect(),
    };
    let raw = RawSociety {
        arcs,
        name: name.map(|s| s.to_string()),
    };
    serde_json::to_string_pretty(&raw).expect("plain structs serialize")
}

/// CSV rows for a step function, one maximal piece per line.
pub fn step_function_csv<T, F>(f: &StepFunction<T>, fmt: F) -> String
where
    T: crate::coord::Coord,
    F: Fn(&T) -> String,
{
    let mut out = String::from("piece_start,piece_end,start_closed,end_closed,value\n");
    for p in f.pieces() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt(&p.start),
            fmt(&p.end),
            p.start_closed,
            p.end_closed,
            p.value
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coord::Coord;

    #[test]
    fn coord_string_kinds() {
        assert!(matches!(
            parse_coord_string("3/7").unwrap(),
            SpectrumCoord::Rational(_)
        ));
        assert!(matches!(
            parse_coord_string("0.15").unwrap(),
            SpectrumCoord::Float(_)
        ));
        assert!(matches!(
            parse_coord_string("1e-3").unwrap(),
            SpectrumCoord::Float(_)
        ));
        // bare integer is neutral, lands rational
        assert!(matches!(
            parse_coord_string("0").unwrap(),
            SpectrumCoord::Rational(_)
        ));
        assert!(parse_coord_string("3//7").is_err());
        assert!(parse_coord_string("abc").is_err());
        assert!(parse_coord_string("inf").is_err());
    }

    #[test]
    fn rational_round_trip() {
        let json = r#"{"arcs":[
            {"left":"3/7","length":"2/7","closure":"half_open"},
            {"left":"0","length":"1/2","closure":"closed"}],
            "name":"pair"}"#;
        let loaded = parse_society(json).unwrap();
        assert!(loaded.society.is_rational());
        assert_eq!(loaded.name.as_deref(), Some("pair"));
        let back = society_to_json(&loaded.society, loaded.name.as_deref());
        let again = parse_society(&back).unwrap();
        assert!(again.society.is_rational());
        match (&loaded.society, &again.society) {
            (AnySociety::Rational(a), AnySociety::Rational(b)) => assert_eq!(a, b),
            _ => unreachable!(),
        }
    }

    #[test]
    fn float_round_trip() {
        let json = r#"{"arcs":[{"left":"0.25","length":"0.5","closure":"closed"},
                               {"left":"0","length":"0.125","closure":"closed"}]}"#;
        let loaded = parse_society(json).unwrap();
        assert!(!loaded.society.is_rational());
        let back = society_to_json(&loaded.society, None);
        let again = parse_society(&back).unwrap();
        assert!(!again.society.is_rational(), "kind lost in {back}");
        match (&loaded.society, &again.society) {
            (AnySociety::Float(a), AnySociety::Float(b)) => assert_eq!(a, b),
            _ => unreachable!(),
        }
    }

    #[test]
    fn mixed_kinds_rejected() {
        let json = r#"{"arcs":[{"left":"1/4","length":"0.5","closure":"closed"}]}"#;
        assert!(matches!(parse_society(json), Err(Error::MixedKinds)));
    }

    #[test]
    fn malformed_and_empty_rejected() {
        assert!(matches!(
            parse_society("not json"),
            Err(Error::MalformedFile(_))
        ));
        assert!(matches!(
            parse_society(r#"{"arcs":[]}"#),
            Err(Error::EmptySociety)
        ));
        let bad_len = r#"{"arcs":[{"left":"0","length":"3/2","closure":"closed"}]}"#;
        assert!(matches!(parse_society(bad_len), Err(Error::BadArcLength(_))));
    }

    #[test]
    fn widening_restores_touching_arcs() {
        // 1/3 has no exact decimal; the touching point is lost to rounding
        let json = r#"{"arcs":[
            {"left":"0.0","length":"0.333333","closure":"closed"},
            {"left":"0.333334","length":"0.2","closure":"closed"}]}"#;
        let plain = parse_society(json).unwrap();
        let wide = parse_society_opts(json, Some(1e-5)).unwrap();
        let (AnySociety::Float(p), AnySociety::Float(w)) = (&plain.society, &wide.society) else {
            unreachable!()
        };
        assert!(!p.arcs()[0].intersects(&p.arcs()[1]));
        assert!(w.arcs()[0].intersects(&w.arcs()[1]));
    }

    #[test]
    fn step_csv_layout() {
        let s = crate::constructions::figure_society("fig_counting").unwrap();
        let f = crate::counting::counting_function(&s);
        let csv = step_function_csv(&f, format_rational);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "piece_start,piece_end,start_closed,end_closed,value"
        );
        for line in lines {
            assert_eq!(line.split(',').count(), 5);
        }
    }

    #[test]
    fn float_format_keeps_kind() {
        assert_eq!(format_float(0.25), "0.25");
        assert_eq!(format_float(0.0), "0.0");
        assert!(matches!(
            parse_coord_string(&format_float(0.0)).unwrap(),
            SpectrumCoord::Float(_)
        ));
        let r = <BigRational as Coord>::from_ratio(0, 1);
        assert_eq!(format_rational(&r), "0/1");
    }
}
