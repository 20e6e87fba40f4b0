use std::io::{BufRead, Write};

use dashmap::mapref::entry::Entry;
use dashmap::DashMap;
use num_bigint::{BigInt, BigUint, Sign};

use super::CanonicalKey;
use crate::error::{Error, Result};

/// Shared map from canonical keys to values of `A`.
///
/// Safe for concurrent readers and writers. Writes are idempotent: binding a
/// key that is already bound to a different value is a bug and panics.
#[derive(Debug, Default)]
pub struct MemoCache {
    map: DashMap<CanonicalKey, BigUint>,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<BigUint> {
        self.map.get(key).map(|v| v.value().clone())
    }

    pub fn insert(&self, key: CanonicalKey, value: BigUint) {
        match self.map.entry(key) {
            Entry::Occupied(o) => assert_eq!(
                o.get(),
                &value,
                "cache key [{}] rebound to a different value",
                o.key()
            ),
            Entry::Vacant(v) => {
                v.insert(value);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// All entries ordered by `(k, m, gaps)`.
    pub fn entries(&self) -> Vec<(CanonicalKey, BigUint)> {
        let mut out: Vec<_> = self
            .map
            .iter()
            .map(|e| (e.key().clone(), e.value().clone()))
            .collect();
        out.sort_by(|(a, _), (b, _)| (a.k(), a.m(), a).cmp(&(b.k(), b.m(), b)));
        out
    }

    /// Writes one `g1 g2 ... = value` line per entry, in a stable order.
    pub fn save<W: Write>(&self, mut sink: W) -> Result<()> {
        for (key, value) in self.entries() {
            writeln!(sink, "{key} = {value}")?;
        }
        sink.flush()?;
        Ok(())
    }

    /// Parses the line format written by [`MemoCache::save`]. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn load<R: BufRead>(source: R) -> Result<Self> {
        let cache = MemoCache::new();
        for (i, line) in source.lines().enumerate() {
            let line_no = i + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = parse_record(trimmed, line_no)?;
            if let Some(existing) = cache.get(&key) {
                if existing != value {
                    return Err(Error::Record {
                        line: line_no,
                        message: format!("key [{key}] already bound to {existing}"),
                    });
                }
                continue;
            }
            cache.map.insert(key, value);
        }
        Ok(cache)
    }
}

impl PartialEq for MemoCache {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.entries() == other.entries()
    }
}

fn parse_record(line: &str, line_no: usize) -> Result<(CanonicalKey, BigUint)> {
    let parse_err = |message: String| Error::Parse {
        line: line_no,
        message,
    };
    let record_err = |message: String| Error::Record {
        line: line_no,
        message,
    };
    let (lhs, rhs) = line
        .split_once('=')
        .ok_or_else(|| parse_err("expected `gaps = value`".into()))?;
    let gaps = lhs
        .split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| parse_err(format!("invalid gap `{t}`")))
        })
        .collect::<Result<Vec<u32>>>()?;
    if gaps.is_empty() {
        return Err(parse_err("missing gaps".into()));
    }
    let rhs = rhs.trim();
    let value: BigInt = rhs
        .parse()
        .map_err(|_| parse_err(format!("invalid value `{rhs}`")))?;
    if value.sign() == Sign::Minus {
        return Err(record_err(format!("negative value {value}")));
    }
    let value = value.magnitude().clone();
    let key = CanonicalKey::new(gaps).map_err(|e| match e {
        Error::Rejected(m) => record_err(m),
        other => other,
    })?;
    // The two base cases are fixed by the key alone.
    let forced = if key.k() == 0 {
        Some(1u32)
    } else if key.m() == 1 {
        Some(0)
    } else {
        None
    };
    if let Some(f) = forced {
        if value != BigUint::from(f) {
            return Err(record_err(format!(
                "key [{key}] has k = {}, m = {} and must have value {f}",
                key.k(),
                key.m()
            )));
        }
    }
    Ok((key, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{evaluate, partitions, GapMultiset};

    #[test]
    fn empty_round_trip() {
        let mut buf = Vec::new();
        MemoCache::new().save(&mut buf).unwrap();
        assert!(buf.is_empty());
        assert!(MemoCache::load(&buf[..]).unwrap().is_empty());
    }

    #[test]
    fn single_record() {
        let cache = MemoCache::new();
        cache.insert(CanonicalKey::new(vec![3, 3]).unwrap(), BigUint::from(3u32));
        let mut buf = Vec::new();
        cache.save(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "3 3 = 3\n");
        assert_eq!(MemoCache::load(&buf[..]).unwrap(), cache);
    }

    #[test]
    fn populated_round_trip() {
        let cache = MemoCache::new();
        for n in 1..=11 {
            for gaps in partitions(n) {
                if let Ok(d) = GapMultiset::new(gaps) {
                    evaluate(&crate::engine::canonicalize(&d), &cache);
                }
            }
        }
        let mut buf = Vec::new();
        cache.save(&mut buf).unwrap();
        let loaded = MemoCache::load(&buf[..]).unwrap();
        assert_eq!(loaded, cache);
        let mut again = Vec::new();
        loaded.save(&mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\n3 3 = 3\n  # indented\n";
        assert_eq!(MemoCache::load(text.as_bytes()).unwrap().len(), 1);
    }

    #[test]
    fn rejected_records() {
        let load = |s: &str| MemoCache::load(s.as_bytes());
        assert!(matches!(load("2 2 = -1"), Err(Error::Record { line: 1, .. })));
        assert!(matches!(load("3 3 = 3\n2 3 = 1"), Err(Error::Record { line: 2, .. })));
        assert!(matches!(load("3 2 = 1"), Err(Error::Record { .. })));
        assert!(matches!(load("3 1 = 0"), Err(Error::Record { .. })));
        assert!(matches!(load("2 2 2 = 5"), Err(Error::Record { .. })));
        assert!(matches!(load("5 = 3"), Err(Error::Record { .. })));
        assert!(matches!(load("3 3 = 3\n3 3 = 4"), Err(Error::Record { line: 2, .. })));
    }

    #[test]
    fn malformed_lines_name_the_line() {
        let load = |s: &str| MemoCache::load(s.as_bytes());
        assert!(matches!(load("3 3 = 3\n3 3 3"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load("x 3 = 3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("3 3 = three"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load(" = 3"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    #[should_panic(expected = "rebound")]
    fn rebinding_panics() {
        let cache = MemoCache::new();
        let key = CanonicalKey::new(vec![3, 3]).unwrap();
        cache.insert(key.clone(), BigUint::from(3u32));
        cache.insert(key, BigUint::from(4u32));
    }
}
