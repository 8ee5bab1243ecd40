//! Plain-text group files.
//!
//! ```text
//! # comment
//! perm 3          (header: permutation degree)
//! 2 1 3           (one generator per line, 1-based images)
//! 2 3 1
//! ```
//!
//! or `cayley <n>` followed by `n` rows of `n` 0-based indices.

use super::{Group, GroupError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Permutations { degree: usize, gens: Vec<Vec<usize>> },
    Cayley { rows: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<Group, GroupError> {
        match self {
            GroupSpec::Permutations { degree, gens } => Group::from_permutations(*degree, gens, cap),
            GroupSpec::Cayley { rows } => {
                if rows.len() > cap {
                    return Err(GroupError::TooLarge { cap });
                }
                Group::from_cayley(rows)
            }
        }
    }
}

pub fn parse_group_file(text: &str) -> Result<GroupSpec, GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GroupError::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or_default();
    let size: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|&s| s > 0)
        .ok_or_else(|| GroupError::Parse {
            line: hline,
            msg: format!("expected `perm <degree>` or `cayley <n>`, found `{header}`"),
        })?;
    if words.next().is_some() {
        return Err(GroupError::Parse {
            line: hline,
            msg: "trailing tokens in header".into(),
        });
    }

    let mut rows = Vec::new();
    for (line, l) in lines {
        let row: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| GroupError::Parse {
                line,
                msg: format!("bad integer: {e}"),
            })?;
        if row.len() != size {
            return Err(GroupError::Parse {
                line,
                msg: format!("expected {size} entries, found {}", row.len()),
            });
        }
        rows.push((line, row));
    }

    match kind {
        "perm" => {
            for (idx, (line, row)) in rows.iter().enumerate() {
                let mut seen = vec![false; size];
                for &x in row {
                    if x == 0 || x > size || std::mem::replace(&mut seen[x - 1], true) {
                        return Err(GroupError::Parse {
                            line: *line,
                            msg: format!("generator {idx} is not a permutation of 1..{size}"),
                        });
                    }
                }
            }
            Ok(GroupSpec::Permutations {
                degree: size,
                gens: rows.into_iter().map(|(_, r)| r).collect(),
            })
        }
        "cayley" => {
            if rows.len() != size {
                return Err(GroupError::Parse {
                    line: hline,
                    msg: format!("expected {size} table rows, found {}", rows.len()),
                });
            }
            if let Some((line, _)) = rows.iter().find(|(_, r)| r.iter().any(|&x| x >= size)) {
                return Err(GroupError::Parse {
                    line: *line,
                    msg: format!("table entry out of range 0..{size}"),
                });
            }
            Ok(GroupSpec::Cayley {
                rows: rows.into_iter().map(|(_, r)| r).collect(),
            })
        }
        other => Err(GroupError::Parse {
            line: hline,
            msg: format!("unknown group kind `{other}`"),
        }),
    }
}

/// Parses and builds in one step.
pub fn load_group(text: &str, cap: usize) -> Result<Group, GroupError> {
    parse_group_file(text)?.build(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;

    #[test]
    fn parses_both_formats() {
        let s3 = load_group("# S3\nperm 3\n\n2 1 3\n2 3 1\n", DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(s3.order(), 6);
        let c2 = load_group("cayley 2\n0 1\n1 0\n", DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(c2.order(), 2);
    }

    #[test]
    fn perm_without_generators_is_trivial() {
        assert_eq!(load_group("perm 4\n", 10).unwrap().order(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_group_file("perm 3\n1 1 2\n").unwrap_err();
        assert!(matches!(err, GroupError::Parse { line: 2, .. }));
        assert!(matches!(parse_group_file(""), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_group_file("perm x"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_group_file("cayley 2\n0 1\n"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_group_file("cayley 2\n0 1\n1 2\n"), Err(GroupError::Parse { line: 3, .. })));
        assert!(matches!(parse_group_file("perm 3\n1 2\n"), Err(GroupError::Parse { .. })));
        assert!(matches!(parse_group_file("matrix 2\n"), Err(GroupError::Parse { .. })));
    }

    #[test]
    fn axiom_failures_are_not_parse_errors() {
        let err = load_group("cayley 2\n1 1\n1 1\n", 10).unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup(_)));
    }

    #[test]
    fn size_cap_applies_to_both_formats() {
        let err = load_group("perm 5\n2 3 4 5 1\n2 1 3 4 5\n", 100).unwrap_err();
        assert_eq!(err, GroupError::TooLarge { cap: 100 });
        let err = load_group("cayley 2\n0 1\n1 0\n", 1).unwrap_err();
        assert_eq!(err, GroupError::TooLarge { cap: 1 });
    }
}
