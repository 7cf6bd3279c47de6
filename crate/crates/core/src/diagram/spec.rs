//! Generator specs: a small recipe language for the diagrams the tool builds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::generators::{connected_power, connected_sum, figure_eight, pretzel, torus2, trefoil};
use super::pd::{codes_from_json, KnotDiagram};
use crate::error::{Error, Result};

/// How to build a diagram.
///
/// JSON forms: `"unknot"`, `"trefoil"`, `"figure8"`, `{"pd": [[..], ..]}`,
/// `{"pretzel": [a, b, c]}`, `{"torus2": n}`, `{"sum": [spec, ..]}` and
/// `{"power": [spec, n]}`.
///
/// Text forms: the bare names above, `pretzel(a,b,c)` or `pretzel:a,b,c`,
/// `torus2(n)` or `torus2:n`, a `^n` suffix for repeated sums, `#` between
/// summands, and any JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramSpec {
    Unknot,
    Trefoil,
    #[serde(rename = "figure8")]
    FigureEight,
    Pd(Vec<[u32; 4]>),
    Pretzel([i64; 3]),
    Torus2(i64),
    Sum(Vec<DiagramSpec>),
    Power(Box<DiagramSpec>, usize),
}

impl DiagramSpec {
    pub fn pretzel(a: i64, b: i64, c: i64) -> Self {
        DiagramSpec::Pretzel([a, b, c])
    }

    /// Builds the diagram. Sums fold left; an empty sum is the unknot.
    pub fn build(&self) -> Result<KnotDiagram> {
        match self {
            DiagramSpec::Unknot => Ok(KnotDiagram::unknot()),
            DiagramSpec::Trefoil => Ok(trefoil()),
            DiagramSpec::FigureEight => Ok(figure_eight()),
            DiagramSpec::Pd(codes) => KnotDiagram::from_pd(codes),
            DiagramSpec::Pretzel([a, b, c]) => pretzel(*a, *b, *c),
            DiagramSpec::Torus2(n) => torus2(*n),
            DiagramSpec::Sum(parts) => {
                let mut acc = KnotDiagram::unknot();
                for p in parts {
                    acc = connected_sum(&acc, &p.build()?)?;
                }
                Ok(acc)
            }
            DiagramSpec::Power(base, n) => connected_power(&base.build()?, *n),
        }
    }

    /// Connected sum in normal form: nested sums flattened, unknot summands
    /// dropped, runs of equal summands collected into powers.
    pub fn sum(parts: impl IntoIterator<Item = DiagramSpec>) -> DiagramSpec {
        let mut runs: Vec<(DiagramSpec, usize)> = Vec::new();
        for p in parts {
            p.flatten_into(&mut runs);
        }
        match runs.len() {
            0 => DiagramSpec::Unknot,
            1 => {
                let (b, n) = runs.pop().expect("one run");
                if n == 1 {
                    b
                } else {
                    DiagramSpec::Power(Box::new(b), n)
                }
            }
            _ => DiagramSpec::Sum(
                runs.into_iter()
                    .map(|(b, n)| {
                        if n == 1 {
                            b
                        } else {
                            DiagramSpec::Power(Box::new(b), n)
                        }
                    })
                    .collect(),
            ),
        }
    }

    fn flatten_into(self, runs: &mut Vec<(DiagramSpec, usize)>) {
        match self {
            DiagramSpec::Unknot => {}
            DiagramSpec::Pd(ref c) if c.is_empty() => {}
            DiagramSpec::Sum(parts) => {
                for p in parts {
                    p.flatten_into(runs);
                }
            }
            DiagramSpec::Power(base, n) => {
                for _ in 0..n {
                    base.as_ref().clone().flatten_into(runs);
                }
            }
            leaf => match runs.last_mut() {
                Some((b, n)) if *b == leaf => *n += 1,
                _ => runs.push((leaf, 1)),
            },
        }
    }

    /// `n`-fold connected sum of `self`, in normal form.
    pub fn power(&self, n: usize) -> DiagramSpec {
        DiagramSpec::sum(std::iter::repeat_n(self.clone(), n))
    }

    /// Parses a comma-separated list of specs, as taken by `--sum`. Bare
    /// integers continue the previous item, so `pretzel:3,-3,4,trefoil` is
    /// two summands.
    pub fn parse_list(text: &str) -> Result<Vec<DiagramSpec>> {
        let mut items: Vec<String> = Vec::new();
        for tok in split_top_level(text, ',') {
            let t = tok.trim();
            if t.parse::<i64>().is_ok() {
                match items.last_mut() {
                    Some(prev) => {
                        prev.push(',');
                        prev.push_str(t);
                    }
                    None => return Err(Error::MalformedInput(format!("stray number {t:?}"))),
                }
            } else {
                items.push(t.to_string());
            }
        }
        items.iter().map(|s| s.parse()).collect()
    }
}

fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn ints(text: &str, what: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| {
            s.trim().parse::<i64>().map_err(|_| {
                Error::MalformedInput(format!("{what}: expected integers, got {text:?}"))
            })
        })
        .collect()
}

fn args<'a>(term: &'a str, name: &str) -> Option<&'a str> {
    let rest = term.strip_prefix(name)?;
    if let Some(r) = rest.strip_prefix(':') {
        return Some(r);
    }
    rest.strip_prefix('(')?.strip_suffix(')')
}

fn parse_term(term: &str) -> Result<DiagramSpec> {
    let term = term.trim();
    if term.is_empty() {
        return Err(Error::MalformedInput("empty diagram spec".into()));
    }
    if term.starts_with('[') || term.starts_with('{') || term.starts_with('"') {
        let v: serde_json::Value = serde_json::from_str(term)
            .map_err(|e| Error::MalformedInput(format!("diagram JSON: {e}")))?;
        if v.is_array() {
            return Ok(DiagramSpec::Pd(codes_from_json(&v)?));
        }
        return serde_json::from_value(v)
            .map_err(|e| Error::MalformedInput(format!("diagram spec: {e}")));
    }
    // power suffix binds to a single term
    if let Some((base, exp)) = term.rsplit_once('^') {
        let n: usize = exp
            .trim()
            .parse()
            .map_err(|_| Error::MalformedInput(format!("bad exponent in {term:?}")))?;
        return Ok(parse_term(base)?.power(n));
    }
    let lower = term.to_ascii_lowercase();
    match lower.as_str() {
        "unknot" | "u" | "0_1" => return Ok(DiagramSpec::Unknot),
        "trefoil" | "3_1" => return Ok(DiagramSpec::Trefoil),
        "figure8" | "figure-eight" | "figure_eight" | "4_1" => return Ok(DiagramSpec::FigureEight),
        _ => {}
    }
    if let Some(a) = args(&lower, "pretzel") {
        let v = ints(a, "pretzel")?;
        let [x, y, z] = v[..] else {
            return Err(Error::MalformedInput(format!(
                "pretzel takes 3 parameters, got {}",
                v.len()
            )));
        };
        return Ok(DiagramSpec::Pretzel([x, y, z]));
    }
    if let Some(a) = args(&lower, "torus2") {
        let v = ints(a, "torus2")?;
        let [n] = v[..] else {
            return Err(Error::MalformedInput("torus2 takes 1 parameter".into()));
        };
        return Ok(DiagramSpec::Torus2(n));
    }
    if let Some(a) = lower.strip_prefix("pd:") {
        return parse_term(a);
    }
    Err(Error::MalformedInput(format!(
        "unknown diagram spec {term:?}"
    )))
}

impl FromStr for DiagramSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = split_top_level(s, '#');
        if parts.len() == 1 {
            return parse_term(parts[0]);
        }
        let terms = parts
            .into_iter()
            .map(parse_term)
            .collect::<Result<Vec<_>>>()?;
        Ok(DiagramSpec::Sum(terms))
    }
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramSpec::Unknot => f.write_str("unknot"),
            DiagramSpec::Trefoil => f.write_str("trefoil"),
            DiagramSpec::FigureEight => f.write_str("figure8"),
            DiagramSpec::Pd(codes) => {
                write!(
                    f,
                    "{}",
                    serde_json::to_string(codes).map_err(|_| fmt::Error)?
                )
            }
            DiagramSpec::Pretzel([a, b, c]) => write!(f, "pretzel({a},{b},{c})"),
            DiagramSpec::Torus2(n) => write!(f, "torus2({n})"),
            DiagramSpec::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" # ")?;
                    }
                    match p {
                        DiagramSpec::Sum(_) | DiagramSpec::Power(..) => write!(f, "{}", json(p)?)?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            DiagramSpec::Power(base, n) => match base.as_ref() {
                DiagramSpec::Sum(_) | DiagramSpec::Power(..) => write!(f, "{}^{n}", json(base)?),
                b => write!(f, "{b}^{n}"),
            },
        }
    }
}

fn json(s: &DiagramSpec) -> std::result::Result<String, fmt::Error> {
    serde_json::to_string(s).map_err(|_| fmt::Error)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DiagramSpec {
        s.parse().unwrap()
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("unknot"), DiagramSpec::Unknot);
        assert_eq!(p("pretzel(3,-3,5)"), DiagramSpec::pretzel(3, -3, 5));
        assert_eq!(p("pretzel:3,-3,5"), DiagramSpec::pretzel(3, -3, 5));
        assert_eq!(p("torus2:7"), DiagramSpec::Torus2(7));
        assert_eq!(
            p("trefoil # figure8"),
            DiagramSpec::Sum(vec![DiagramSpec::Trefoil, DiagramSpec::FigureEight])
        );
        assert_eq!(
            p("pretzel:3,-3,4^3"),
            DiagramSpec::Power(Box::new(DiagramSpec::pretzel(3, -3, 4)), 3)
        );
        assert_eq!(
            p("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").build().unwrap(),
            trefoil()
        );
        assert_eq!(p(r#"{"torus2": 5}"#), DiagramSpec::Torus2(5));
        assert!(matches!(
            "pretzel(1,2)".parse::<DiagramSpec>(),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            "banana".parse::<DiagramSpec>(),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn lists() {
        let l = DiagramSpec::parse_list("pretzel:3,-3,4,trefoil,torus2(5)").unwrap();
        assert_eq!(
            l,
            vec![
                DiagramSpec::pretzel(3, -3, 4),
                DiagramSpec::Trefoil,
                DiagramSpec::Torus2(5)
            ]
        );
        assert!(DiagramSpec::parse_list("3,trefoil").is_err());
    }

    #[test]
    fn json_forms_round_trip() {
        let s = DiagramSpec::Sum(vec![
            DiagramSpec::pretzel(3, -3, 5),
            DiagramSpec::Torus2(7),
            DiagramSpec::Pd(vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]),
            DiagramSpec::Power(Box::new(DiagramSpec::Trefoil), 2),
            DiagramSpec::Unknot,
        ]);
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains(r#"{"pretzel":[3,-3,5]}"#), "{text}");
        assert!(text.contains(r#"{"torus2":7}"#));
        assert_eq!(serde_json::from_str::<DiagramSpec>(&text).unwrap(), s);
        assert_eq!(p(&text), s);
        assert_eq!(p(&s.to_string()), s);
    }

    #[test]
    fn normal_form() {
        let k = DiagramSpec::pretzel(3, -3, 4);
        assert_eq!(
            DiagramSpec::sum([DiagramSpec::Unknot, DiagramSpec::Unknot]),
            DiagramSpec::Unknot
        );
        assert_eq!(DiagramSpec::sum([DiagramSpec::Unknot, k.clone()]), k);
        assert_eq!(
            DiagramSpec::sum([k.power(2), k.clone()]),
            DiagramSpec::Power(Box::new(k.clone()), 3)
        );
        assert_eq!(k.power(0), DiagramSpec::Unknot);
    }

    #[test]
    fn builds() {
        assert_eq!(p("unknot").build().unwrap(), KnotDiagram::unknot());
        assert_eq!(p("trefoil^2").build().unwrap().crossing_count(), 6);
        assert_eq!(
            p("pretzel:3,-3,4 # torus2:3")
                .build()
                .unwrap()
                .crossing_count(),
            13
        );
        assert!(matches!(p("torus2:4").build(), Err(Error::BadParameter(_))));
    }
}
