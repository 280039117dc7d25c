//! The group-spec mini-language used by every CLI command.
//!
//! Grammar: `a:n`, `s:n`, `c:n` (alternating, symmetric, cyclic of degree
//! n), `d:m` (dihedral of order m, m even), `psl2:q`, `psl3:3`,
//! `direct(spec,spec)`, `file:path`, and inline generators
//! `perm:<degree>:<gen>;<gen>;...` where each generator is written in
//! cycle notation or as an image list.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm_core::perm::{parse_permutation, Permutation};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupSpec {
    Alternating(u32),
    Symmetric(u32),
    Cyclic(u32),
    /// Dihedral group of the given (even) order.
    Dihedral(u32),
    Psl2(u64),
    Psl3_3,
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    File(String),
    Perm { degree: usize, gens: Vec<Permutation> },
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::parse(0, "empty group spec"));
        }
        if let Some(rest) = s.strip_prefix("direct(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(s.len(), "missing ')' in direct(...)"))?;
            let comma = top_level_comma(inner).ok_or_else(|| {
                Error::parse(7, "direct(...) takes two comma-separated specs")
            })?;
            let left = GroupSpec::parse(&inner[..comma])?;
            let right = GroupSpec::parse(&inner[comma + 1..])?;
            return Ok(GroupSpec::Direct(Box::new(left), Box::new(right)));
        }
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(Error::parse(5, "file: needs a path"));
            }
            return Ok(GroupSpec::File(path.to_string()));
        }
        if let Some(rest) = s.strip_prefix("perm:") {
            return parse_perm_spec(rest);
        }
        let (family, param) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("unrecognized group spec {s:?}")))?;
        let number = |what: &str| -> Result<u64> {
            param.parse::<u64>().map_err(|_| {
                Error::parse(family.len() + 1, format!("bad {what} parameter {param:?}"))
            })
        };
        match family {
            "a" => {
                let n = number("alternating")?;
                if n == 0 || n > 5000 {
                    return Err(Error::parse(2, "degree must be between 1 and 5000"));
                }
                Ok(GroupSpec::Alternating(n as u32))
            }
            "s" => {
                let n = number("symmetric")?;
                if n == 0 || n > 5000 {
                    return Err(Error::parse(2, "degree must be between 1 and 5000"));
                }
                Ok(GroupSpec::Symmetric(n as u32))
            }
            "c" => {
                let n = number("cyclic")?;
                if n == 0 || n > 60000 {
                    return Err(Error::parse(2, "degree must be between 1 and 60000"));
                }
                Ok(GroupSpec::Cyclic(n as u32))
            }
            "d" => {
                let m = number("dihedral")?;
                if m < 2 || m % 2 != 0 || m > 60000 {
                    return Err(Error::parse(
                        2,
                        "dihedral parameter is the group order: even, at least 2",
                    ));
                }
                Ok(GroupSpec::Dihedral(m as u32))
            }
            "psl2" => Ok(GroupSpec::Psl2(number("psl2")?)),
            "psl3" => {
                if param == "3" {
                    Ok(GroupSpec::Psl3_3)
                } else {
                    Err(Error::parse(5, "only psl3:3 is supported"))
                }
            }
            _ => Err(Error::parse(0, format!("unknown family {family:?}"))),
        }
    }

    /// Canonical form; `parse` round-trips it.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn parse_perm_spec(rest: &str) -> Result<GroupSpec> {
    let (degree_text, gens_text) = rest
        .split_once(':')
        .ok_or_else(|| Error::parse(5, "perm: needs '<degree>:<generators>'"))?;
    let degree: usize = degree_text
        .parse()
        .map_err(|_| Error::parse(5, format!("bad degree {degree_text:?}")))?;
    if degree == 0 || degree > u16::MAX as usize {
        return Err(Error::parse(5, format!("degree {degree} unsupported")));
    }
    let mut gens = Vec::new();
    for part in gens_text.split(';') {
        gens.push(parse_permutation(degree, part)?);
    }
    if gens.is_empty() {
        return Err(Error::parse(5, "perm: needs at least one generator"));
    }
    Ok(GroupSpec::Perm { degree, gens })
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Alternating(n) => write!(f, "a:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "s:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "c:{n}"),
            GroupSpec::Dihedral(m) => write!(f, "d:{m}"),
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Psl3_3 => write!(f, "psl3:3"),
            GroupSpec::Direct(a, b) => write!(f, "direct({a},{b})"),
            GroupSpec::File(path) => write!(f, "file:{path}"),
            GroupSpec::Perm { degree, gens } => {
                write!(f, "perm:{degree}:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_family() {
        for (text, expected) in [
            ("a:5", GroupSpec::Alternating(5)),
            ("s:4", GroupSpec::Symmetric(4)),
            ("c:6", GroupSpec::Cyclic(6)),
            ("d:10", GroupSpec::Dihedral(10)),
            ("psl2:8", GroupSpec::Psl2(8)),
            ("psl3:3", GroupSpec::Psl3_3),
        ] {
            assert_eq!(GroupSpec::parse(text).unwrap(), expected);
        }
    }

    #[test]
    fn parses_nested_direct() {
        let spec = GroupSpec::parse("direct(direct(a:5,c:6),s:4)").unwrap();
        assert_eq!(spec.to_string(), "direct(direct(a:5,c:6),s:4)");
    }

    #[test]
    fn parses_inline_generators() {
        let spec = GroupSpec::parse("perm:5:(0 1 2 3 4);(0 1 2)").unwrap();
        match &spec {
            GroupSpec::Perm { degree, gens } => {
                assert_eq!(*degree, 5);
                assert_eq!(gens.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(spec.to_string(), "perm:5:(0 1 2 3 4);(0 1 2)");
    }

    #[test]
    fn round_trips() {
        for text in [
            "a:5",
            "s:6",
            "c:12",
            "d:16",
            "psl2:27",
            "psl3:3",
            "direct(a:5,direct(c:2,c:3))",
            "file:/tmp/g.grp",
            "perm:3:1 0 2",
        ] {
            let spec = GroupSpec::parse(text).unwrap();
            assert_eq!(GroupSpec::parse(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        for text in [
            "", "a:", "a:0", "q:5", "d:7", "d:0", "psl3:5", "direct(a:5)",
            "direct(a:5,c:6", "perm:0:(0 1)", "perm:3", "file:",
        ] {
            assert!(GroupSpec::parse(text).is_err(), "{text:?} should fail");
        }
    }
}
