//! Parser for group-spec strings such as `Wr(Alt(5),Cyc(2))` or
//! `Perm(4; (0 1)(2 3), (0 2)(1 3))`. The canonical printer is
//! `GroupSpec`'s `Display`.

use std::fmt;

use codegree_core::builders::GroupSpec;
use codegree_core::perm::Permutation;

/// A syntax or validation error with the character column it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub pos: usize,
    pub message: String,
    pub input: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} at column {}", self.message, self.pos)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.pos))
    }
}

impl std::error::Error for SpecError {}

type PResult<T> = Result<T, (usize, String)>;

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

#[derive(Clone, Copy)]
enum Kind {
    Degree(fn(usize) -> GroupSpec),
    Field(fn(u64) -> GroupSpec),
    Pair(fn(Box<GroupSpec>, Box<GroupSpec>) -> GroupSpec),
    Perm,
}

fn constructor(name: &str) -> Option<(&'static str, Kind)> {
    use GroupSpec::*;
    let lower = name.to_lowercase();
    Some(match lower.as_str() {
        "sym" => ("Sym", Kind::Degree(Sym)),
        "alt" => ("Alt", Kind::Degree(Alt)),
        "cyc" => ("Cyc", Kind::Degree(Cyc)),
        "dih" => ("Dih", Kind::Degree(Dih)),
        "psl2" => ("PSL2", Kind::Field(Psl2)),
        "pgl2" => ("PGL2", Kind::Field(Pgl2)),
        "pgammal2" | "pγl2" => ("PGammaL2", Kind::Field(PGammaL2)),
        "sl2" => ("SL2", Kind::Field(Sl2)),
        "psl3" => ("PSL3", Kind::Field(Psl3)),
        "dp" => ("DP", Kind::Pair(Dp)),
        "wr" => ("Wr", Kind::Pair(Wr)),
        "perm" => ("Perm", Kind::Perm),
        _ => return None,
    })
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> PResult<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err((self.pos, format!("expected '{want}', found '{c}'"))),
            None => Err((self.pos, format!("expected '{want}', found end of input"))),
        }
    }

    fn integer(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err((start, "expected an integer".into()));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| (start, format!("integer {text} is too large")))
    }

    fn spec(&mut self) -> PResult<GroupSpec> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err((start, "expected a constructor name".into()));
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let (canonical, kind) =
            constructor(&name).ok_or_else(|| (start, format!("unknown constructor '{name}'")))?;
        self.expect('(')?;
        let spec = match kind {
            Kind::Degree(make) => {
                let n = self.single_integer(canonical)?;
                make(usize::try_from(n).map_err(|_| (start, "degree too large".to_string()))?)
            }
            Kind::Field(make) => make(self.single_integer(canonical)?),
            Kind::Pair(make) => {
                let a = self.spec()?;
                if self.peek() != Some(',') {
                    return Err((self.pos, format!("{canonical} takes 2 arguments")));
                }
                self.pos += 1;
                let b = self.spec()?;
                if self.peek() == Some(',') {
                    return Err((self.pos, format!("{canonical} takes 2 arguments")));
                }
                make(Box::new(a), Box::new(b))
            }
            Kind::Perm => self.perm_body()?,
        };
        self.expect(')')?;
        if let Err(e) = spec.validate() {
            return Err((start, e.to_string()));
        }
        Ok(spec)
    }

    fn single_integer(&mut self, name: &str) -> PResult<u64> {
        let n = self.integer()?;
        if self.peek() == Some(',') {
            return Err((self.pos, format!("{name} takes 1 argument")));
        }
        Ok(n)
    }

    fn perm_body(&mut self) -> PResult<GroupSpec> {
        let degree = self.integer()? as usize;
        self.expect(';')?;
        let mut gens = vec![self.generator(degree)?];
        while self.peek() == Some(',') {
            self.pos += 1;
            gens.push(self.generator(degree)?);
        }
        Ok(GroupSpec::Perm { degree, gens })
    }

    /// One or more cycles; points inside a cycle are separated by spaces or commas.
    fn generator(&mut self, degree: usize) -> PResult<Permutation> {
        let start = self.pos;
        if self.peek() != Some('(') {
            return Err((self.pos, "expected a cycle".into()));
        }
        let mut cycles = Vec::new();
        while self.peek() == Some('(') {
            self.pos += 1;
            let mut cycle = Vec::new();
            while self.peek() != Some(')') {
                if !cycle.is_empty() && self.peek() == Some(',') {
                    self.pos += 1;
                }
                cycle.push(self.integer()? as usize);
            }
            self.pos += 1;
            cycles.push(cycle);
        }
        Permutation::from_cycles(degree, &cycles).map_err(|e| (start, e.to_string()))
    }
}

/// Parses a spec string and validates its parameters.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let result = p.spec().and_then(|s| match p.peek() {
        None => Ok(s),
        Some(c) => Err((p.pos, format!("unexpected '{c}' after the spec"))),
    });
    result.map_err(|(pos, message)| SpecError {
        pos,
        message,
        input: text.to_string(),
    })
}

/// Parses a corpus file: one spec per line, `#` starts a comment.
pub fn parse_corpus(text: &str) -> Result<Vec<GroupSpec>, (usize, SpecError)> {
    let mut specs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if !line.is_empty() {
            specs.push(parse_spec(line).map_err(|e| (i + 1, e))?);
        }
    }
    Ok(specs)
}
