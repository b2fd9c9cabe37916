//! `key: value` text files with indented continuation lines.

use crate::error::ParseError;
use crate::field::FieldSpec;
use crate::poly::parse::parse_polynomial;
use crate::poly::FracPolynomial;

/// One `key: value` entry with the position of its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
    pub col: usize,
}

impl Entry {
    /// Maps a position inside `value` back to the file.
    pub fn locate(&self, err: ParseError) -> ParseError {
        let col = if err.line == 1 { self.col + err.col - 1 } else { err.col };
        ParseError::new(self.line + err.line - 1, col, err.msg)
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, msg)
    }

    pub fn polynomial(&self, field: FieldSpec, names: &[String]) -> Result<FracPolynomial, ParseError> {
        parse_polynomial(field, names, &self.value).map_err(|e| self.locate(e))
    }

    /// Splits on `sep`, keeping each piece's position.
    pub fn split(&self, sep: char) -> Vec<Entry> {
        let mut out = Vec::new();
        let (mut line, mut col) = (self.line, self.col);
        let mut start = (line, col);
        let mut piece = String::new();
        for c in self.value.chars() {
            if c == sep {
                out.push(Entry {
                    key: self.key.clone(),
                    value: std::mem::take(&mut piece),
                    line: start.0,
                    col: start.1,
                });
                col += 1;
                start = (line, col);
                continue;
            }
            piece.push(c);
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        out.push(Entry {
            key: self.key.clone(),
            value: piece,
            line: start.0,
            col: start.1,
        });
        out
    }
}

/// Parsed entries in file order.
#[derive(Clone, Debug, Default)]
pub struct KeyedFile {
    pub entries: Vec<Entry>,
}

impl KeyedFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut entries: Vec<Entry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            if line.starts_with(char::is_whitespace) {
                match entries.last_mut() {
                    Some(e) => {
                        e.value.push('\n');
                        e.value.push_str(line);
                    }
                    None => return Err(ParseError::new(i + 1, 1, "continuation line without a key")),
                }
                continue;
            }
            let Some(colon) = line.find(':') else {
                return Err(ParseError::new(i + 1, 1, "expected `key: value`"));
            };
            entries.push(Entry {
                key: line[..colon].trim().to_string(),
                value: line[colon + 1..].to_string(),
                line: i + 1,
                col: colon + 2,
            });
        }
        Ok(KeyedFile { entries })
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn require(&self, key: &str) -> Result<&Entry, ParseError> {
        self.get(key)
            .ok_or_else(|| ParseError::new(1, 1, format!("missing `{key}:` entry")))
    }

    pub fn field(&self) -> Result<FieldSpec, ParseError> {
        let e = self.require("field")?;
        e.value
            .trim()
            .parse()
            .map_err(|err: crate::error::FieldError| e.error(err.to_string()))
    }

    /// Whitespace separated words of an entry.
    pub fn words(&self, key: &str) -> Result<Vec<String>, ParseError> {
        Ok(self.require(key)?.value.split_whitespace().map(String::from).collect())
    }

    pub fn integers(&self, key: &str) -> Result<Option<Vec<u32>>, ParseError> {
        let Some(e) = self.get(key) else { return Ok(None) };
        e.value
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| e.error(format!("bad integer `{s}`"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuation_and_positions() {
        let text = "field: F_3\nvars: x y\npoly: x^2\n  + y^2 +\n";
        let f = KeyedFile::parse(text).unwrap();
        assert_eq!(f.words("vars").unwrap(), vec!["x", "y"]);
        let names = f.words("vars").unwrap();
        let err = f
            .require("poly")
            .unwrap()
            .polynomial(f.field().unwrap(), &names)
            .unwrap_err();
        assert_eq!(err.line, 4);
        let split = Entry {
            key: "k".into(),
            value: " a; b".into(),
            line: 3,
            col: 4,
        }
        .split(';');
        assert_eq!((split[1].line, split[1].col, split[1].value.as_str()), (3, 7, " b"));
        assert!(KeyedFile::parse("  x").is_err());
    }
}
