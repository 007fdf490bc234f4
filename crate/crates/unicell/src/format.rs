//! One-line text format for maps.
//!
//! ```text
//! U <n> r<root> a:<alpha images> s:<sigma images>
//! Uc <n> p:<i-j pairs with i < j>
//! ```
//!
//! Both forms take an optional ` l:<labels>` suffix, one label per vertex in
//! tour order of the vertex minima. The short form always denotes the
//! canonical map (root 0, face `(0, 1, …, 2n−1)`).

use std::fmt::Write as _;

use thiserror::Error;
use unicell_core::labels::LabeledUnicellularMap;
use unicell_core::{LabelError, MapError, Permutation, UnicellularMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty line")]
    Empty,
    #[error("unknown map tag `{0}`, expected `U` or `Uc`")]
    Tag(String),
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("malformed field `{field}`: {detail}")]
    Field { field: &'static str, detail: String },
    #[error("field `{field}` has {found} entries, expected {expected}")]
    Length {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("unexpected trailing input `{0}`")]
    Trailing(String),
    #[error("labels given where a plain map was expected")]
    UnexpectedLabels,
    #[error("invalid map: {0}")]
    Map(#[from] MapError),
    #[error("invalid labels: {0}")]
    Label(#[from] LabelError),
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `U <n> r<root> a:… s:…`, half-edge names kept as they are.
pub fn serialize(m: &UnicellularMap) -> String {
    format!(
        "U {} r{} a:{} s:{}",
        m.edge_count(),
        m.root(),
        join(m.alpha().images()),
        join(m.sigma().images())
    )
}

/// `Uc <n> p:…` of the canonical form of `m`.
pub fn serialize_canonical(m: &UnicellularMap) -> String {
    let c = m.canonicalize();
    let pairs = c.edge_pairs().into_iter().map(|(i, j)| format!("{i}-{j}"));
    format!("Uc {} p:{}", c.edge_count(), join(pairs))
}

pub fn serialize_labeled(lm: &LabeledUnicellularMap, canonical: bool) -> String {
    let mut line = if canonical {
        serialize_canonical(lm.map())
    } else {
        serialize(lm.map())
    };
    write!(line, " l:{}", join(lm.vertex_labels())).expect("writing to a String");
    line
}

fn list<T: std::str::FromStr>(field: &'static str, text: &str) -> Result<Vec<T>, ParseError>
where
    T::Err: std::fmt::Display,
{
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            item.trim().parse().map_err(|e: T::Err| ParseError::Field {
                field,
                detail: format!("`{item}`: {e}"),
            })
        })
        .collect()
}

fn prefixed<'a>(token: Option<&'a str>, prefix: &str, field: &'static str) -> Result<&'a str, ParseError> {
    let token = token.ok_or(ParseError::Missing(field))?;
    token.strip_prefix(prefix).ok_or_else(|| ParseError::Field {
        field,
        detail: format!("expected prefix `{prefix}` in `{token}`"),
    })
}

fn exact_len<T>(field: &'static str, items: Vec<T>, expected: usize) -> Result<Vec<T>, ParseError> {
    if items.len() != expected {
        return Err(ParseError::Length {
            field,
            expected,
            found: items.len(),
        });
    }
    Ok(items)
}

/// Parses either form, with or without labels.
pub fn parse_line(line: &str) -> Result<(UnicellularMap, Option<Vec<i64>>), ParseError> {
    let mut tokens = line.split_whitespace();
    let tag = tokens.next().ok_or(ParseError::Empty)?;
    if tag != "U" && tag != "Uc" {
        return Err(ParseError::Tag(tag.to_string()));
    }
    let n: usize = tokens
        .next()
        .ok_or(ParseError::Missing("n"))?
        .parse()
        .map_err(|e| ParseError::Field {
            field: "n",
            detail: format!("{e}"),
        })?;
    let map = match tag {
        "U" => {
            let root = prefixed(tokens.next(), "r", "root")?.parse().map_err(|e| ParseError::Field {
                field: "root",
                detail: format!("{e}"),
            })?;
            let alpha = exact_len("a", list("a", prefixed(tokens.next(), "a:", "a")?)?, 2 * n)?;
            let sigma = exact_len("s", list("s", prefixed(tokens.next(), "s:", "s")?)?, 2 * n)?;
            UnicellularMap::new(n, Permutation::from_images(alpha)?, Permutation::from_images(sigma)?, root)?
        }
        "Uc" => {
            let pairs: Vec<String> = list("p", prefixed(tokens.next(), "p:", "p")?)?;
            let pairs = exact_len("p", pairs, n)?;
            let mut images = vec![usize::MAX; 2 * n];
            for pair in &pairs {
                let bad = || ParseError::Field {
                    field: "p",
                    detail: format!("`{pair}` is not a pair i-j of distinct unused half-edges below {}", 2 * n),
                };
                let (i, j) = pair.split_once('-').ok_or_else(bad)?;
                let (i, j): (usize, usize) = (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?);
                if i == j || i >= 2 * n || j >= 2 * n || images[i] != usize::MAX || images[j] != usize::MAX {
                    return Err(bad());
                }
                images[i] = j;
                images[j] = i;
            }
            if n == 0 {
                return Err(MapError::Empty.into());
            }
            UnicellularMap::from_pairing(Permutation::from_images(images)?)?
        }
        _ => unreachable!("tag checked above"),
    };
    let labels = match tokens.next() {
        None => None,
        Some(token) => Some(list("l", prefixed(Some(token), "l:", "l")?)?),
    };
    if let Some(rest) = tokens.next() {
        return Err(ParseError::Trailing(rest.to_string()));
    }
    Ok((map, labels))
}

/// A plain map line; rejects labels.
pub fn parse_map(line: &str) -> Result<UnicellularMap, ParseError> {
    match parse_line(line)? {
        (map, None) => Ok(map),
        (_, Some(_)) => Err(ParseError::UnexpectedLabels),
    }
}

/// A labelled map line; a missing label list is an error.
pub fn parse_labeled(line: &str) -> Result<LabeledUnicellularMap, ParseError> {
    let (map, labels) = parse_line(line)?;
    let labels = labels.ok_or(ParseError::Missing("l"))?;
    Ok(LabeledUnicellularMap::from_vertex_labels(map, &labels)?)
}
