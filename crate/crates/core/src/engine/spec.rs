use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{RecsumError, Result};

/// A sequence `a_N` described symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SeqSpec {
    /// `a_N = N^exponent`; negative exponents are undefined at `N = 0`.
    Power { exponent: i32 },
    Constant { value: Rational },
    /// `a_N = values[N - first]`, undefined outside the table.
    Tabulated { first: i64, values: Vec<Rational> },
}

impl SeqSpec {
    pub fn power(exponent: i32) -> Self {
        SeqSpec::Power { exponent }
    }

    pub fn constant(value: Rational) -> Self {
        SeqSpec::Constant { value }
    }

    pub fn tabulated(first: i64, values: Vec<Rational>) -> Self {
        SeqSpec::Tabulated { first, values }
    }

    /// Parses a table file: either a bare JSON array (first index 1) or
    /// `{"first": <int>, "values": [...]}`. Entries are `"n/d"` strings or integers.
    pub fn tabulated_from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum TableFile {
            Bare(Vec<Rational>),
            Indexed { first: i64, values: Vec<Rational> },
        }
        let parsed: TableFile = serde_json::from_str(text)
            .map_err(|e| RecsumError::invalid(format!("bad sequence table: {e}")))?;
        Ok(match parsed {
            TableFile::Bare(values) => SeqSpec::tabulated(1, values),
            TableFile::Indexed { first, values } => SeqSpec::tabulated(first, values),
        })
    }

    /// `a_N`.
    pub fn eval(&self, n: i64) -> Result<Rational> {
        match self {
            SeqSpec::Power { exponent } => {
                if n == 0 && *exponent < 0 {
                    return Err(RecsumError::Domain(format!(
                        "N^{exponent} is undefined at N = 0"
                    )));
                }
                Rational::from(n).pow(*exponent)
            }
            SeqSpec::Constant { value } => Ok(value.clone()),
            SeqSpec::Tabulated { first, values } => {
                let idx = n - first;
                if idx < 0 || idx >= values.len() as i64 {
                    return Err(RecsumError::Range(format!(
                        "index {n} outside tabulated range {first}..={}",
                        first + values.len() as i64 - 1
                    )));
                }
                Ok(values[idx as usize].clone())
            }
        }
    }
}

/// `a_N` for the sequence `s`.
pub fn seq_eval(s: &SeqSpec, n: i64) -> Result<Rational> {
    s.eval(n)
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::Power { exponent } => write!(f, "pow:{exponent}"),
            SeqSpec::Constant { value } => write!(f, "const:{value}"),
            SeqSpec::Tabulated { first, values } => {
                let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "tab@{first}:[{}]", items.join(","))
            }
        }
    }
}

impl FromStr for SeqSpec {
    type Err = RecsumError;

    /// `pow:<e>` or `const:<rational>`. Tables come from files, see
    /// [`SeqSpec::tabulated_from_json`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(e) = s.strip_prefix("pow:") {
            let exponent = e
                .trim()
                .parse()
                .map_err(|_| RecsumError::invalid(format!("bad exponent in {s:?}")))?;
            return Ok(SeqSpec::power(exponent));
        }
        if let Some(v) = s.strip_prefix("const:") {
            return Ok(SeqSpec::constant(v.parse()?));
        }
        Err(RecsumError::invalid(format!(
            "unknown sequence {s:?}; expected pow:<e>, const:<r> or tab:<file>"
        )))
    }
}

/// A recurrent sum of order `m` over `q..=n`.
///
/// `seqs[0]` is the innermost sequence `a_(1)`, attached to the smallest
/// index `N_1`; `seqs[m-1]` is the outermost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrentSumSpec {
    pub m: usize,
    pub q: i64,
    pub n: i64,
    pub seqs: Vec<SeqSpec>,
}

impl RecurrentSumSpec {
    pub fn new(m: usize, q: i64, n: i64, seqs: Vec<SeqSpec>) -> Result<Self> {
        let spec = RecurrentSumSpec { m, q, n, seqs };
        spec.validate()?;
        Ok(spec)
    }

    /// `m` copies of one sequence.
    pub fn same(m: usize, q: i64, n: i64, seq: SeqSpec) -> Result<Self> {
        Self::new(m, q, n, vec![seq; m])
    }

    pub fn validate(&self) -> Result<()> {
        if self.seqs.len() != self.m {
            return Err(RecsumError::invalid(format!(
                "order {} needs {} sequences, got {}",
                self.m,
                self.m,
                self.seqs.len()
            )));
        }
        if self.m >= 1 && self.n < self.q {
            return Err(RecsumError::invalid(format!(
                "upper bound n={} is below lower bound q={}",
                self.n, self.q
            )));
        }
        Ok(())
    }

    /// Number of indices in `q..=n`.
    pub fn width(&self) -> usize {
        (self.n - self.q + 1).max(0) as usize
    }

    /// The same sum restricted to its `k` innermost sequences.
    pub fn prefix(&self, k: usize) -> RecurrentSumSpec {
        RecurrentSumSpec {
            m: k,
            q: self.q,
            n: self.n,
            seqs: self.seqs[..k].to_vec(),
        }
    }

    pub fn with_upper(&self, n: i64) -> RecurrentSumSpec {
        RecurrentSumSpec { n, ..self.clone() }
    }

    /// `table[k][N - q]` = `a_(k+1)(N)` for every `N` in `q..=n`.
    pub(crate) fn table(&self) -> Result<Vec<Vec<Rational>>> {
        self.validate()?;
        self.seqs
            .iter()
            .map(|s| (self.q..=self.n).map(|n| s.eval(n)).collect())
            .collect()
    }
}

impl fmt::Display for RecurrentSumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seqs: Vec<String> = self.seqs.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "m={} q={} n={} seqs=[{}]",
            self.m,
            self.q,
            self.n,
            seqs.join("; ")
        )
    }
}
