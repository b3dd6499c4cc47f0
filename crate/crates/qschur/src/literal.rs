//! Text formats for matrices, compositions and partitions.
//!
//! Matrix literals are either a JSON list of `[i, j, a_ij]` triples or a
//! signed sum of terms `cE12`, `cE(i,j)`, `cD(a,b,...)`. `D(...)` places its
//! values on the diagonal starting at a caller-supplied first index.

use qschur_core::{Composition, Error, IntMatZ};

fn parse_err(s: &str, why: &str) -> Error {
    Error::Parse(format!("{s:?}: {why}"))
}

pub fn parse_matrix(s: &str, first: i64) -> Result<IntMatZ, Error> {
    let t = s.trim();
    if t.starts_with('[') {
        let triples: Vec<[i64; 3]> = serde_json::from_str(t).map_err(|e| parse_err(s, &e.to_string()))?;
        return Ok(IntMatZ::from_entries(triples.into_iter().map(|[i, j, a]| (i, j, a))));
    }
    if t == "0" {
        return Ok(IntMatZ::zero());
    }
    let mut p = Cursor { s: t.as_bytes(), at: 0, src: s };
    let mut entries = Vec::new();
    let mut first_term = true;
    loop {
        p.skip_ws();
        if p.done() {
            if first_term {
                return Err(parse_err(s, "empty matrix literal"));
            }
            break;
        }
        let sign = match p.peek() {
            Some(b'+') => {
                p.at += 1;
                1
            }
            Some(b'-') => {
                p.at += 1;
                -1
            }
            _ if first_term => 1,
            _ => return Err(p.fail("expected + or -")),
        };
        p.skip_ws();
        let coeff = p.number()?.unwrap_or(1) * sign;
        p.skip_ws();
        match p.bump() {
            Some(b'E') => {
                let (i, j) = if p.peek() == Some(b'(') {
                    let xs = p.paren_list()?;
                    match xs[..] {
                        [i, j] => (i, j),
                        _ => return Err(p.fail("E(i,j) takes two indices")),
                    }
                } else {
                    let i = p.digit()?;
                    let j = p.digit()?;
                    (i, j)
                };
                entries.push((i, j, coeff));
            }
            Some(b'D') => {
                let xs = p.paren_list()?;
                entries.extend(xs.iter().enumerate().map(|(k, x)| (first + k as i64, first + k as i64, coeff * x)));
            }
            _ => return Err(p.fail("expected E or D")),
        }
        first_term = false;
    }
    Ok(IntMatZ::from_entries(entries))
}

struct Cursor<'a> {
    s: &'a [u8],
    at: usize,
    src: &'a str,
}

impl Cursor<'_> {
    fn done(&self) -> bool {
        self.at >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.at += 1;
        }
    }

    fn fail(&self, why: &str) -> Error {
        parse_err(self.src, &format!("{why} at byte {}", self.at))
    }

    fn digit(&mut self) -> Result<i64, Error> {
        match self.bump() {
            Some(c) if c.is_ascii_digit() => Ok((c - b'0') as i64),
            _ => Err(self.fail("expected a digit")),
        }
    }

    fn number(&mut self) -> Result<Option<i64>, Error> {
        let start = self.at;
        if self.peek() == Some(b'-') {
            self.at += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.at]).unwrap();
        match txt {
            "" => Ok(None),
            "-" => Err(self.fail("dangling sign")),
            _ => txt.parse().map(Some).map_err(|_| self.fail("integer out of range")),
        }
    }

    fn paren_list(&mut self) -> Result<Vec<i64>, Error> {
        if self.bump() != Some(b'(') {
            return Err(self.fail("expected ("));
        }
        let mut xs = Vec::new();
        loop {
            self.skip_ws();
            xs.push(self.number()?.ok_or_else(|| self.fail("expected an integer"))?);
            self.skip_ws();
            match self.bump() {
                Some(b',') => continue,
                Some(b')') => return Ok(xs),
                _ => return Err(self.fail("expected , or )")),
            }
        }
    }
}

/// `[[i, x_i], ...]` or `i:x_i,...`.
pub fn parse_composition(s: &str) -> Result<Composition, Error> {
    let t = s.trim();
    if t.starts_with('[') {
        let pairs: Vec<[i64; 2]> = serde_json::from_str(t).map_err(|e| parse_err(s, &e.to_string()))?;
        return Ok(Composition::from_pairs(pairs.into_iter().map(|[i, x]| (i, x))));
    }
    let mut pairs = Vec::new();
    for part in t.split(',').filter(|p| !p.trim().is_empty()) {
        let (i, x) = part.split_once(':').ok_or_else(|| parse_err(s, "expected i:x pairs"))?;
        let i = i.trim().parse().map_err(|_| parse_err(s, "bad index"))?;
        let x = x.trim().parse().map_err(|_| parse_err(s, "bad value"))?;
        pairs.push((i, x));
    }
    Ok(Composition::from_pairs(pairs))
}

/// `2,1`, `(2,1)` or `[2,1]`; must be weakly decreasing and positive.
pub fn parse_partition(s: &str) -> Result<Vec<i64>, Error> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let parts: Vec<i64> = t
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse().map_err(|_| parse_err(s, "bad part")))
        .collect::<Result<_, _>>()?;
    if parts.is_empty() || !qschur_core::reps::is_partition(&parts) {
        return Err(parse_err(s, "not a partition"));
    }
    Ok(parts)
}

/// Entries as `[i, j, a]` triples, the JSON matrix form.
pub fn triples(a: &IntMatZ) -> Vec<[i64; 3]> {
    a.entries().map(|(i, j, x)| [i, j, x]).collect()
}

pub fn pairs(c: &Composition) -> Vec<[i64; 2]> {
    c.parts().iter().map(|&(i, x)| [i, x]).collect()
}
