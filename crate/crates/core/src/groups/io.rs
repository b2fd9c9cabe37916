//! Group input files.
//!
//! ```text
//! # comments start with '#'
//! name: a3
//! field: F_3
//! generators:
//!   c: [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
//! relators:
//!   c^3
//! ```
//!
//! Generator names are optional (`g1`, `g2`, ... by default). A matrix may
//! continue over several lines until its brackets balance.

use crate::error::{GroupError, ParseError};
use crate::field::FieldSpec;
use crate::groups::{MatrixGroup, Word};
use crate::linalg::{parse_matrix, Matrix};

/// Parsed contents of a group file, before enumeration.
#[derive(Clone, Debug)]
pub struct GroupInput {
    pub name: Option<String>,
    pub field: FieldSpec,
    pub generators: Vec<Matrix>,
    pub names: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupInput {
    pub fn dimension(&self) -> usize {
        self.generators[0].rows()
    }

    pub fn build(&self, cap: usize) -> Result<MatrixGroup, GroupError> {
        MatrixGroup::with_names(
            self.field,
            self.dimension(),
            self.generators.clone(),
            self.names.clone(),
            self.relators.clone(),
            cap,
        )
    }

    /// Renders the input back into the file syntax.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("name: {name}\n"));
        }
        out.push_str(&format!("field: {}\ngenerators:\n", self.field));
        for (name, g) in self.names.iter().zip(&self.generators) {
            out.push_str(&format!("  {name}: {g}\n"));
        }
        if !self.relators.is_empty() {
            out.push_str("relators:\n");
            for r in &self.relators {
                out.push_str(&format!("  {}\n", r.display(&self.names)));
            }
        }
        out
    }
}

#[derive(PartialEq)]
enum Section {
    Header,
    Generators,
    Relators,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn bracket_depth(s: &str) -> i32 {
    s.chars().fold(0, |d, c| match c {
        '[' => d + 1,
        ']' => d - 1,
        _ => d,
    })
}

/// Parses a group file.
pub fn parse_group(text: &str) -> Result<GroupInput, ParseError> {
    let mut name = None;
    let mut field = None;
    let mut section = Section::Header;
    let mut generators = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut relator_lines: Vec<(usize, String)> = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        let lineno = i + 1;
        let raw = lines[i].split('#').next().unwrap_or("");
        i += 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        if let Some((key, value)) = line.split_once(':') {
            let key = key.trim();
            let value = value.trim();
            match key {
                "name" if section == Section::Header => {
                    name = Some(value.to_string());
                    continue;
                }
                "field" if section == Section::Header => {
                    let spec = value
                        .parse::<FieldSpec>()
                        .map_err(|e| ParseError::new(lineno, indent + 1, e.to_string()))?;
                    field = Some(spec);
                    continue;
                }
                "generators" if value.is_empty() => {
                    section = Section::Generators;
                    continue;
                }
                "relators" if value.is_empty() => {
                    section = Section::Relators;
                    continue;
                }
                _ => {}
            }
        }
        match section {
            Section::Header => {
                return Err(ParseError::new(lineno, indent + 1, format!("unexpected `{line}`")));
            }
            Section::Relators => relator_lines.push((lineno, line.to_string())),
            Section::Generators => {
                let field = field.ok_or_else(|| ParseError::new(lineno, 1, "`field:` must precede generators"))?;
                let (label, body, offset) = match line.split_once(':') {
                    Some((l, b)) if is_ident(l.trim()) => {
                        let off = raw.find(':').unwrap() + 1;
                        (Some(l.trim().to_string()), b.to_string(), off)
                    }
                    _ => (None, line.to_string(), indent),
                };
                let mut body = body;
                while bracket_depth(&body) > 0 && i < lines.len() {
                    body.push(' ');
                    body.push_str(lines[i].split('#').next().unwrap_or("").trim());
                    i += 1;
                }
                let m = parse_matrix(field, &body, lineno, offset + 1)?;
                let label = label.unwrap_or_else(|| format!("g{}", generators.len() + 1));
                if names.contains(&label) {
                    return Err(ParseError::new(
                        lineno,
                        indent + 1,
                        format!("duplicate generator `{label}`"),
                    ));
                }
                if let Some(first) = generators.first() {
                    let first: &Matrix = first;
                    if m.rows() != first.rows() || m.cols() != first.cols() {
                        return Err(ParseError::new(
                            lineno,
                            offset + 1,
                            format!(
                                "matrix is {}x{}, expected {}x{}",
                                m.rows(),
                                m.cols(),
                                first.rows(),
                                first.cols()
                            ),
                        ));
                    }
                }
                if m.rows() != m.cols() || m.rows() == 0 {
                    return Err(ParseError::new(
                        lineno,
                        offset + 1,
                        "generator must be a nonempty square matrix",
                    ));
                }
                names.push(label);
                generators.push(m);
            }
        }
    }
    let field = field.ok_or_else(|| ParseError::new(1, 1, "missing `field:` line"))?;
    if generators.is_empty() {
        return Err(ParseError::new(lines.len().max(1), 1, "no generators"));
    }
    let mut relators = Vec::new();
    for (lineno, line) in relator_lines {
        for part in line.split(',').filter(|s| !s.trim().is_empty()) {
            let w = Word::parse(part, &names).map_err(|e| ParseError::new(lineno, 1, e.to_string()))?;
            relators.push(w);
        }
    }
    Ok(GroupInput {
        name,
        field,
        generators,
        names,
        relators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3Z3: &str = "\
# counterexample group
field: F_3(t)
generators:
  s: [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
  [[1, t, 0],
   [0, 1, t],
   [0, 0, 1]]
relators:
  s^3, g2^3
  s*g2*s^-1*g2^-1
";

    #[test]
    fn parses_and_round_trips() {
        let input = parse_group(Z3Z3).unwrap();
        assert_eq!(input.names, vec!["s", "g2"]);
        assert_eq!(input.relators.len(), 3);
        let g = input.build(100).unwrap();
        assert_eq!(g.order(), 9);
        let again = parse_group(&input.to_text()).unwrap();
        assert_eq!(again.generators, input.generators);
        assert_eq!(again.relators, input.relators);
    }

    #[test]
    fn reports_positions() {
        let bad = "field: F_3\ngenerators:\n  a: [[1, 0], [0, $]]\n";
        let e = parse_group(bad).unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.col, 19);
        let ragged = "field: F_3\ngenerators:\n  [[1, 0], [0]]\n";
        assert!(parse_group(ragged).unwrap_err().msg.contains("row 2"));
        assert!(parse_group("generators:\n [[1]]\n").is_err());
        assert!(parse_group("field: F_3\ngenerators:\n a: [[1]]\nrelators:\n b^2\n").is_err());
        assert!(parse_group("field: F_6\n").is_err());
    }
}
