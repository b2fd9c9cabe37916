//! Words in generators and Todd–Coxeter coset enumeration.

use std::collections::VecDeque;

use crate::error::GroupError;

/// A word `g_{i1}^{k1} g_{i2}^{k2} ...` with generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn new(letters: Vec<(usize, i64)>) -> Self {
        Word(letters.into_iter().filter(|&(_, k)| k != 0).collect())
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Expands to a sequence of columns `2g` (for `g`) and `2g + 1` (for `g^-1`).
    fn columns(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &(g, k) in &self.0 {
            let col = if k > 0 { 2 * g } else { 2 * g + 1 };
            out.extend(std::iter::repeat_n(col, k.unsigned_abs() as usize));
        }
        out
    }

    /// Parses `a^3*b^-1 * a` against a list of generator names.
    pub fn parse(text: &str, names: &[String]) -> Result<Word, GroupError> {
        let mut letters = Vec::new();
        for token in text
            .split(|c: char| c == '*' || c.is_whitespace())
            .filter(|s| !s.is_empty())
        {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e = e.trim_start_matches('(').trim_end_matches(')');
                    let k: i64 = e.parse().map_err(|_| GroupError::UnknownGenerator(token.to_string()))?;
                    (n, k)
                }
                None => (token, 1),
            };
            let g = names
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))?;
            letters.push((g, exp));
        }
        Ok(Word::new(letters))
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, k)| {
                if k == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{k}", names[g])
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn from_columns(cols: &[usize]) -> Word {
        let mut letters: Vec<(usize, i64)> = Vec::new();
        for &c in cols {
            let (g, k) = (c / 2, if c % 2 == 0 { 1 } else { -1 });
            match letters.last_mut() {
                Some((h, e)) if *h == g => *e += k,
                _ => letters.push((g, k)),
            }
        }
        Word::new(letters)
    }
}

/// Completed coset table of the trivial subgroup, i.e. the Cayley graph.
pub struct CosetTable {
    ngens: usize,
    rows: Vec<Vec<usize>>,
}

impl CosetTable {
    /// Order of the finitely presented group.
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// A shortest word for every coset, coset 0 first (empty word).
    pub fn words(&self) -> Vec<Word> {
        let mut paths: Vec<Option<Vec<usize>>> = vec![None; self.rows.len()];
        paths[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for col in 0..2 * self.ngens {
                let d = self.rows[c][col];
                if paths[d].is_none() {
                    let mut path = paths[c].clone().unwrap();
                    path.push(col);
                    paths[d] = Some(path);
                    queue.push_back(d);
                }
            }
        }
        paths.into_iter().map(|p| Word::from_columns(&p.unwrap())).collect()
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    limit: usize,
}

const fn inv(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.table.len() >= self.limit {
            return false;
        }
        let d = self.table.len();
        self.table.push(vec![None; self.ncols]);
        self.parent.push(d);
        self.table[c][x] = Some(d);
        self.table[d][inv(x)] = Some(c);
        true
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let Some(f) = self.table[e][x] else { continue };
                self.table[f][inv(x)] = None;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if let Some(v) = self.table[e1][x] {
                    self.merge(f1, v);
                } else if let Some(v) = self.table[f1][inv(x)] {
                    self.merge(e1, v);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][inv(x)] = Some(e1);
                }
            }
        }
    }

    /// Scans `word` from `c` forwards and backwards, defining cosets until the
    /// remaining gap is one letter (a deduction) or closes (a coincidence).
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> bool {
        if word.is_empty() {
            return true;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][word[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return true;
            }
            while j >= i as isize {
                match self.table[b][inv(word[j as usize])] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if j == i as isize {
                self.table[f][word[i]] = Some(b);
                self.table[b][inv(word[i])] = Some(f);
                return true;
            }
            if !self.define(f, word[i]) {
                return false;
            }
        }
    }
}

/// Enumerates cosets of the trivial subgroup (HLT strategy). Returns `None`
/// when more than `limit` cosets would be needed.
pub fn coset_enumerate(ngens: usize, relators: &[Word], limit: usize) -> Option<CosetTable> {
    let ncols = 2 * ngens;
    let rels: Vec<Vec<usize>> = relators.iter().map(Word::columns).collect();
    let mut en = Enumerator {
        ncols,
        table: vec![vec![None; ncols]],
        parent: vec![0],
        queue: Vec::new(),
        limit,
    };
    let mut c = 0;
    while c < en.table.len() {
        if en.live(c) {
            for r in &rels {
                if !en.scan_and_fill(c, r) {
                    return None;
                }
                if !en.live(c) {
                    break;
                }
            }
            if en.live(c) {
                for x in 0..ncols {
                    if en.table[c][x].is_none() && !en.define(c, x) {
                        return None;
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..en.table.len()).filter(|&c| en.live(c)).collect();
    let mut renumber = vec![usize::MAX; en.table.len()];
    for (k, &c) in live.iter().enumerate() {
        renumber[c] = k;
    }
    let mut rows = Vec::with_capacity(live.len());
    for &c in &live {
        let mut row = Vec::with_capacity(ncols);
        for x in 0..ncols {
            let d = en.table[c][x]?;
            let d = en.rep(d);
            row.push(renumber[d]);
        }
        rows.push(row);
    }
    Some(CosetTable { ngens, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        ["a", "b", "c"][..k].iter().map(|s| s.to_string()).collect()
    }

    fn order(k: usize, rels: &[&str]) -> Option<usize> {
        let n = names(k);
        let rels: Vec<Word> = rels.iter().map(|r| Word::parse(r, &n).unwrap()).collect();
        coset_enumerate(k, &rels, 100_000).map(|t| t.order())
    }

    #[test]
    fn small_presentations() {
        assert_eq!(order(1, &["a^5"]), Some(5));
        assert_eq!(order(2, &["a^3", "b^3", "a*b*a^-1*b^-1"]), Some(9));
        assert_eq!(order(2, &["a^2", "b^3", "a*b*a*b"]), Some(6));
        assert_eq!(order(2, &["a^2", "b^2", "a*b*a*b*a*b"]), Some(6));
        // Quaternion group.
        assert_eq!(order(2, &["a^4", "a^2*b^-2", "b^-1*a*b*a"]), Some(8));
        // Collapse: a = a^2 forces the trivial group.
        assert_eq!(order(1, &["a"]), Some(1));
    }

    #[test]
    fn limit_is_respected() {
        assert_eq!(order(1, &[]), None);
        let n = names(2);
        let rels = vec![Word::parse("a*b*a^-1*b^-1", &n).unwrap()];
        assert!(coset_enumerate(2, &rels, 50).is_none());
    }

    #[test]
    fn words_cover_cosets() {
        let n = names(2);
        let rels: Vec<Word> = ["a^3", "b^3", "a*b*a^-1*b^-1"]
            .iter()
            .map(|r| Word::parse(r, &n).unwrap())
            .collect();
        let t = coset_enumerate(2, &rels, 1000).unwrap();
        let words = t.words();
        assert_eq!(words.len(), 9);
        assert!(words[0].is_empty());
        assert_eq!(Word::parse("a^2 * b^-1", &n).unwrap().display(&n), "a^2*b^-1");
        assert!(Word::parse("z", &n).is_err());
    }
}
