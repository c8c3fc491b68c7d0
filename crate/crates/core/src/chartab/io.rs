//! Text formats for character tables and degree lists.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{Character, CharacterTable};
use crate::cyclo::{parse_cyclo, Cyclo};
use crate::error::{GrcError, Result};

/// Character degrees with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeList {
    pub entries: Vec<(BigUint, u64)>,
}

impl DegreeList {
    pub fn from_table(t: &CharacterTable) -> DegreeList {
        let mut entries: Vec<(BigUint, u64)> = Vec::new();
        for r in &t.rows {
            match entries.iter_mut().find(|(d, _)| *d == BigUint::from(r.degree)) {
                Some((_, m)) => *m += 1,
                None => entries.push((BigUint::from(r.degree), 1)),
            }
        }
        DegreeList { entries }
    }

    pub fn character_count(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

pub fn write_table(t: &CharacterTable) -> String {
    let mut out = String::new();
    let join = |v: &[String]| v.join(" ");
    let _ = writeln!(out, "chartab v1");
    let _ = writeln!(out, "order {}", t.order);
    let _ = writeln!(out, "exponent {}", t.exponent);
    let _ = writeln!(out, "classes {}", t.class_count());
    let _ = writeln!(
        out,
        "sizes {}",
        join(&t.sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    );
    let _ = writeln!(
        out,
        "reps {}",
        join(&t.reps.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    );
    for r in &t.rows {
        let vals: Vec<String> = r.values.iter().map(|v| v.lift(t.exponent).to_string()).collect();
        let _ = writeln!(out, "char {} : {}", r.degree, vals.join(" ; "));
    }
    out
}

pub fn save_table(t: &CharacterTable, path: &Path) -> Result<()> {
    std::fs::write(path, write_table(t))?;
    Ok(())
}

fn field<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| GrcError::Parse(format!("missing `{key}` line")))?;
    line.strip_prefix(key)
        .map(str::trim)
        .ok_or_else(|| GrcError::Parse(format!("expected `{key}`, found `{line}`")))
}

fn numbers<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| GrcError::Parse(format!("bad {what} `{t}`")))
        })
        .collect()
}

/// Parses and re-verifies a table.
pub fn parse_table(text: &str) -> Result<CharacterTable> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    if lines.next() != Some("chartab v1") {
        return Err(GrcError::Parse("missing `chartab v1` header".into()));
    }
    let order: usize = field(lines.next(), "order")?
        .parse()
        .map_err(|_| GrcError::Parse("bad order".into()))?;
    let exponent: u32 = field(lines.next(), "exponent")?
        .parse()
        .map_err(|_| GrcError::Parse("bad exponent".into()))?;
    if exponent == 0 {
        return Err(GrcError::Parse("exponent must be positive".into()));
    }
    let k: usize = field(lines.next(), "classes")?
        .parse()
        .map_err(|_| GrcError::Parse("bad class count".into()))?;
    let sizes: Vec<usize> = numbers(field(lines.next(), "sizes")?, "class size")?;
    let reps: Vec<u32> = numbers(field(lines.next(), "reps")?, "representative")?;
    if sizes.len() != k || reps.len() != k {
        return Err(GrcError::Parse(format!("expected {k} sizes and representatives")));
    }
    let mut rows = Vec::new();
    for line in lines {
        let body = field(Some(line), "char")?;
        let (deg, vals) = body
            .split_once(':')
            .ok_or_else(|| GrcError::Parse(format!("missing `:` in `{line}`")))?;
        let degree: u64 = deg
            .trim()
            .parse()
            .map_err(|_| GrcError::Parse(format!("bad degree in `{line}`")))?;
        let values: Vec<Cyclo> = vals
            .split(';')
            .map(|v| parse_cyclo(v, exponent))
            .collect::<Result<_>>()?;
        if values.len() != k {
            return Err(GrcError::Parse(format!("expected {k} values in `{line}`")));
        }
        rows.push(Character { degree, values });
    }
    if rows.is_empty() {
        return Err(GrcError::Parse("no characters".into()));
    }
    // the inverse class of c is the column whose values are the conjugates
    let inverse_class = (0..k)
        .map(|c| {
            (0..k)
                .find(|&d| rows.iter().all(|r| r.values[d] == r.values[c].conj()))
                .ok_or_else(|| GrcError::Orthogonality(format!("column {c} has no conjugate column")))
        })
        .collect::<Result<Vec<_>>>()?;
    let t = CharacterTable {
        order,
        exponent,
        sizes,
        reps,
        inverse_class,
        rows,
    };
    t.verify()?;
    Ok(t)
}

pub fn load_table(path: &Path) -> Result<CharacterTable> {
    parse_table(&std::fs::read_to_string(path)?)
}

/// Parses lines `degree multiplicity`; `#` starts a comment.
pub fn parse_degrees(text: &str) -> Result<DegreeList> {
    let mut entries = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || GrcError::Parse(format!("bad degree line `{line}`"));
        let (d, m) = match parts.as_slice() {
            [d, m] => (*d, *m),
            _ => return Err(bad()),
        };
        let d: BigUint = d.parse().map_err(|_| bad())?;
        let m: u64 = m.parse().map_err(|_| bad())?;
        if m == 0 || d.to_u64() == Some(0) {
            return Err(bad());
        }
        entries.push((d, m));
    }
    Ok(DegreeList { entries })
}

pub fn load_degrees(path: &Path) -> Result<DegreeList> {
    parse_degrees(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_table;
    use crate::group::builtin_group;

    #[test]
    fn round_trip() {
        for name in ["S3", "C5", "Q8", "SL2_3"] {
            let t = dixon_table(&builtin_group(name).unwrap()).unwrap();
            let text = write_table(&t);
            let back = parse_table(&text).unwrap();
            assert_eq!(back, t, "{name}");
        }
    }

    #[test]
    fn corrupted_value_rejected() {
        let t = dixon_table(&builtin_group("S3").unwrap()).unwrap();
        let text = write_table(&t).replace("char 2 : 2 ; -1 ; 0", "char 2 : 2 ; 1 ; 0");
        assert!(matches!(parse_table(&text), Err(GrcError::Orthogonality(_))));
    }

    #[test]
    fn file_round_trip() {
        let t = dixon_table(&builtin_group("D4").unwrap()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d4.tab");
        save_table(&t, &path).unwrap();
        assert_eq!(load_table(&path).unwrap(), t);
    }

    #[test]
    fn degrees() {
        let d = parse_degrees("# S3\n1 2\n2 1\n").unwrap();
        assert_eq!(d.entries, vec![(BigUint::from(1u8), 2), (BigUint::from(2u8), 1)]);
        assert_eq!(d.character_count(), 3);
        let s3 = dixon_table(&builtin_group("S3").unwrap()).unwrap();
        assert_eq!(DegreeList::from_table(&s3), d);
        assert!(parse_degrees("1\n").is_err());
        assert!(parse_degrees("1 0\n").is_err());
        assert!(parse_degrees("x 1\n").is_err());
        let big = parse_degrees("258823477531055064045234375 1\n").unwrap();
        assert_eq!(big.entries.len(), 1);
    }
}
