//! The `.sfam` text format.
//!
//! ```text
//! # optional comments
//! n=7
//! 1,2,4
//! 2,3,5
//! {}
//! ```
//!
//! The header is the first non-comment, nonblank line. Each further nonblank
//! line is one member as ascending comma-separated 1-based elements; `{}` is
//! the empty set. Output is always in canonical member order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::subset::SubsetWord;

pub fn to_sfam(family: &Family) -> String {
    let mut out = String::with_capacity(16 + family.len() * 3 * family.ground_n() as usize / 2);
    let _ = writeln!(out, "n={}", family.ground_n());
    for member in family.members() {
        if member.is_empty() {
            out.push_str("{}");
        } else {
            for (idx, e) in member.elements().enumerate() {
                if idx > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{e}");
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_sfam(text: &str) -> Result<Family> {
    let mut n: Option<u32> = None;
    let mut words = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let Some(ground) = n else {
            let value = line
                .strip_prefix("n=")
                .ok_or_else(|| err(format!("expected header `n=<int>`, found `{line}`")))?;
            let parsed: u32 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("invalid ground size `{value}`")))?;
            SubsetWord::empty(parsed).map_err(|e| err(e.to_string()))?;
            n = Some(parsed);
            continue;
        };
        if line == "{}" {
            words.push(0);
            continue;
        }
        let mut elements = Vec::new();
        for tok in line.split(',') {
            let tok = tok.trim();
            let e: i64 = tok
                .parse()
                .map_err(|_| err(format!("invalid element `{tok}`")))?;
            if let Some(&prev) = elements.last() {
                if e <= prev {
                    return Err(err(format!("elements must be strictly ascending, `{e}` after `{prev}`")));
                }
            }
            elements.push(e);
        }
        let set = SubsetWord::from_elements(&elements, ground).map_err(|e| err(e.to_string()))?;
        words.push(set.bits());
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing `n=<int>` header".into(),
    })?;
    let before = words.len();
    let family = Family::from_words(n, words)?;
    if family.len() != before {
        return Err(Error::Parse {
            line: 0,
            message: "duplicate member".into(),
        });
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_canonically() {
        let f = Family::from_words(5, vec![0b110, 0, 0b1]).unwrap();
        assert_eq!(to_sfam(&f), "n=5\n{}\n1\n2,3\n");
    }

    #[test]
    fn parses_with_comments() {
        let text = "# fano line\n\nn=7\n2,3,5\n# c\n1,2,4\n";
        let f = parse_sfam(text).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(to_sfam(&f), "n=7\n1,2,4\n2,3,5\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_sfam("n=7\n1,9\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_sfam("n=7\n3,1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_sfam("x=7\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_sfam("n=70\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_sfam("n=7\n1,a\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_sfam("# only\n"), Err(Error::Parse { line: 0, .. })));
        assert!(matches!(parse_sfam("n=7\n1\n1\n"), Err(Error::Parse { .. })));
    }
}
