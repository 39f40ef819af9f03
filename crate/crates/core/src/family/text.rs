//! Plain-text family format: a header `n k count`, then one member per
//! line as increasing 1-based elements separated by spaces.

use std::fmt::Write;

use super::Family;
use crate::combinat::SubsetCode;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl Family {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k, self.len());
        for a in &self.members {
            let mut first = true;
            for e in a.iter() {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{e}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Family> {
        let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(1, "header must be `n k count`"));
        }
        let num = |s: &str, what: &str| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|_| parse_err(1, format!("{what} is not a non-negative integer: {s:?}")))
        };
        let n = num(fields[0], "n")?;
        let k = num(fields[1], "k")?;
        let count = num(fields[2], "count")? as usize;
        if n > crate::combinat::MAX_N as u64 || k > n {
            return Err(parse_err(1, format!("unsupported shape n={n}, k={k}")));
        }
        let (n, k) = (n as u32, k as u32);
        let mut members = Vec::with_capacity(count);
        for (lineno, line) in lines.by_ref() {
            if members.len() == count {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(parse_err(lineno, "more members than the header announces"));
            }
            let elems = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| parse_err(lineno, format!("not an element: {t:?}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            if elems.len() != k as usize {
                return Err(parse_err(lineno, format!("expected {k} elements, found {}", elems.len())));
            }
            if elems.windows(2).any(|w| w[0] >= w[1]) {
                return Err(parse_err(lineno, "elements must be strictly increasing"));
            }
            let set = SubsetCode::from_elements(n, &elems).map_err(|e| parse_err(lineno, e.to_string()))?;
            members.push((lineno, set));
        }
        if members.len() != count {
            return Err(parse_err(
                text.lines().count().max(1),
                format!("header announces {count} members, found {}", members.len()),
            ));
        }
        members.sort_by(|a, b| a.1.cmp(&b.1));
        if let Some(w) = members.windows(2).find(|w| w[0].1 == w[1].1) {
            return Err(parse_err(w[1].0.max(w[0].0), format!("duplicate member {}", w[0].1)));
        }
        Ok(Family::from_sorted(n, k, members.into_iter().map(|(_, s)| s).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let f = Family::from_sets(5, 2, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        let text = f.to_text();
        assert_eq!(text, "5 2 3\n1 2\n1 3\n2 3\n");
        assert_eq!(Family::parse_text(&text).unwrap(), f);
        let e = Family::empty(4, 2).unwrap();
        assert_eq!(Family::parse_text(&e.to_text()).unwrap(), e);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line_of = |t: &str| match Family::parse_text(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of("5 2\n"), 1);
        assert_eq!(line_of("5 2 2\n1 2\n2 1\n"), 3);
        assert_eq!(line_of("5 2 2\n1 2\n1 6\n"), 3);
        assert_eq!(line_of("5 2 2\n1 2\n1 2 3\n"), 3);
        assert_eq!(line_of("5 2 2\n1 2\n1 2\n"), 3);
        assert_eq!(line_of("5 2 1\n1 2\n3 4\n"), 3);
        assert_eq!(line_of("5 2 1\n1 x\n"), 2);
    }
}
