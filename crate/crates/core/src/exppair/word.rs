use std::fmt;
use std::str::FromStr;

use super::PairError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Process {
    A,
    B,
}

/// Sequence of processes. Text form: `item+` with `item := 'A' ['^' digits]
/// | 'B'`, whitespace ignored. Rendering folds runs of `A` into `A^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainWord(Vec<Process>);

impl ChainWord {
    pub fn new(letters: Vec<Process>) -> Self {
        ChainWord(letters)
    }

    pub fn empty() -> Self {
        ChainWord(Vec::new())
    }

    pub fn letters(&self) -> &[Process] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `p` followed by this word, i.e. `p` applied last.
    pub fn prepend(&self, p: Process) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(p);
        v.extend_from_slice(&self.0);
        ChainWord(v)
    }
}

impl FromStr for ChainWord {
    type Err = PairError;

    fn from_str(s: &str) -> Result<Self, PairError> {
        let err = |pos, reason| PairError::Parse {
            word: s.to_string(),
            pos,
            reason,
        };
        let bytes: Vec<(usize, u8)> = s
            .bytes()
            .enumerate()
            .filter(|(_, b)| !b.is_ascii_whitespace())
            .collect();
        if bytes.is_empty() {
            return Err(err(0, "empty word"));
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let (pos, b) = bytes[i];
            match b {
                b'A' => {
                    i += 1;
                    let mut run = 1usize;
                    if i < bytes.len() && bytes[i].1 == b'^' {
                        i += 1;
                        let start = i;
                        let mut n: usize = 0;
                        while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                            n = n
                                .checked_mul(10)
                                .and_then(|n| n.checked_add((bytes[i].1 - b'0') as usize))
                                .ok_or_else(|| err(bytes[i].0, "run too long"))?;
                            i += 1;
                        }
                        if i == start {
                            return Err(err(pos, "'^' must be followed by digits"));
                        }
                        if n == 0 {
                            return Err(err(pos, "zero-length run"));
                        }
                        run = n;
                    }
                    out.extend(std::iter::repeat_n(Process::A, run));
                }
                b'B' => {
                    i += 1;
                    out.push(Process::B);
                }
                _ => return Err(err(pos, "expected 'A' or 'B'")),
            }
        }
        Ok(ChainWord(out))
    }
}

impl fmt::Display for ChainWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.0.len() {
            match self.0[i] {
                Process::B => {
                    f.write_str("B")?;
                    i += 1;
                }
                Process::A => {
                    let start = i;
                    while i < self.0.len() && self.0[i] == Process::A {
                        i += 1;
                    }
                    match i - start {
                        1 => f.write_str("A")?,
                        n => write!(f, "A^{n}")?,
                    }
                }
            }
        }
        Ok(())
    }
}
