//! Value lists written as `a..b`, `a..b:odd`, `a..b:even` or comma lists of those.

use crate::error::{Error, Result};

fn int(s: &str, whole: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{s}` in range `{whole}`")))
}

/// Parses a range expression; ends are inclusive and duplicates are dropped.
pub fn parse_range(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    if text.trim().is_empty() {
        return Err(Error::Parse("empty range".into()));
    }
    for item in text.split(',') {
        let item = item.trim();
        let (body, filter) = match item.split_once(':') {
            Some((b, f)) => (b, Some(f.trim())),
            None => (item, None),
        };
        let values: Vec<i64> = match body.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (int(lo, text)?, int(hi.strip_prefix('=').unwrap_or(hi), text)?);
                if lo > hi {
                    return Err(Error::Parse(format!("range `{item}` is empty ({lo} > {hi})")));
                }
                (lo..=hi).collect()
            }
            None => vec![int(body, text)?],
        };
        let keep: fn(&i64) -> bool = match filter {
            None => |_| true,
            Some("odd") => |v| v % 2 != 0,
            Some("even") => |v| v % 2 == 0,
            Some(f) => return Err(Error::Parse(format!("unknown range filter `{f}` (expected odd or even)"))),
        };
        for v in values.into_iter().filter(keep) {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_range("3..31:odd").unwrap().len(), 15);
        assert_eq!(parse_range("2..8:even").unwrap(), vec![2, 4, 6, 8]);
        assert_eq!(parse_range("3,5,7,11").unwrap(), vec![3, 5, 7, 11]);
        assert_eq!(parse_range("-3..1").unwrap(), vec![-3, -2, -1, 0, 1]);
        assert_eq!(parse_range("-1").unwrap(), vec![-1]);
        assert_eq!(parse_range("1..3, 2..5:odd").unwrap(), vec![1, 2, 3, 5]);
        assert_eq!(parse_range("4..=6").unwrap(), vec![4, 5, 6]);
        assert_eq!(parse_range("-7..-3:odd").unwrap(), vec![-7, -5, -3]);
    }

    #[test]
    fn errors() {
        for bad in ["", "x", "5..3", "1..4:prime", "1..", "1,,2"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }
}
