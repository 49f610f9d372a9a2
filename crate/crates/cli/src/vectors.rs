//! Line-delimited test vectors: one JSON object per line with the fields
//! `op`, `a`, `b`, `expected`, `seed` in that order.

use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ops::{multiply, parse_value, random_value, Field, Method, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorRecord {
    pub op: String,
    pub a: String,
    pub b: String,
    pub expected: String,
    pub seed: u64,
}

/// Record `index` of a file generated from `seed`. Operands come from a
/// generator seeded with `seed + index`, so each record is reproducible on
/// its own.
pub fn generate_record(field: Field, seed: u64, index: usize) -> VectorRecord {
    let record_seed = seed.wrapping_add(index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(record_seed);
    let a = random_value(field, &mut rng);
    let b = random_value(field, &mut rng);
    let expected = multiply(Method::Schoolbook, &a, &b).expect("schoolbook applies to every field");
    VectorRecord {
        op: field.op_name().to_string(),
        a: a.to_string(),
        b: b.to_string(),
        expected: expected.to_string(),
        seed: record_seed,
    }
}

/// `count` records; without a field the three operations alternate.
pub fn generate(field: Option<Field>, count: usize, seed: u64) -> Vec<VectorRecord> {
    (0..count)
        .map(|i| generate_record(field.unwrap_or(Field::ALL[i % 3]), seed, i))
        .collect()
}

pub fn to_lines(records: &[VectorRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

struct Parsed {
    line: usize,
    field: Field,
    a: Value,
    b: Value,
    expected: Value,
}

/// Parses a vector file. Blank lines are skipped; errors carry the 1-based
/// line number.
fn parse_lines(text: &str) -> Result<Vec<Parsed>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let rec: VectorRecord = serde_json::from_str(raw).map_err(|e| format!("line {line}: {e}"))?;
        let field =
            Field::from_op_name(&rec.op).ok_or_else(|| format!("line {line}: op: unknown operation {:?}", rec.op))?;
        let value = |name: &str, text: &str| parse_value(field, name, text).map_err(|e| format!("line {line}: {e}"));
        out.push(Parsed {
            line,
            field,
            a: value("a", &rec.a)?,
            b: value("b", &rec.b)?,
            expected: value("expected", &rec.expected)?,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub records: usize,
    /// Pass/fail counts per `(field, method)` in first-seen order.
    pub methods: Vec<(String, String, Tally)>,
    /// Line numbers of failing records with the methods that disagreed.
    pub failures: Vec<(usize, Vec<String>)>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (field, method, t) in &self.methods {
            s.push_str(&format!(
                "{field:<5} {method:<12} pass {:>6}  fail {:>6}\n",
                t.pass, t.fail
            ));
        }
        for (line, methods) in &self.failures {
            s.push_str(&format!("line {line}: mismatch ({})\n", methods.join(", ")));
        }
        s.push_str(&format!("records {}  failed {}\n", self.records, self.failures.len()));
        s
    }
}

fn check(p: &Parsed) -> Vec<(Method, bool)> {
    p.field
        .methods()
        .into_iter()
        .map(|m| (m, multiply(m, &p.a, &p.b).is_ok_and(|r| r == p.expected)))
        .collect()
}

/// Recomputes every record with every method of its field. Records are
/// checked on worker threads; the report is ordered by line number.
pub fn verify(text: &str) -> Result<VerifyReport, String> {
    let parsed = parse_lines(text)?;
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(parsed.len().max(1));
    let chunk = parsed.len().div_ceil(workers).max(1);
    let results: Vec<Vec<(Method, bool)>> = thread::scope(|scope| {
        let handles: Vec<_> = parsed
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(check).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });

    let mut report = VerifyReport {
        records: parsed.len(),
        ..Default::default()
    };
    for (p, outcome) in parsed.iter().zip(results) {
        let mut bad = Vec::new();
        for (m, ok) in outcome {
            let (field, method) = (p.field.to_string(), m.to_string());
            let idx = match report.methods.iter().position(|e| e.0 == field && e.1 == method) {
                Some(i) => i,
                None => {
                    report.methods.push((field, method, Tally::default()));
                    report.methods.len() - 1
                }
            };
            let t = &mut report.methods[idx].2;
            if ok {
                t.pass += 1;
            } else {
                t.fail += 1;
                bad.push(m.to_string());
            }
        }
        if !bad.is_empty() {
            report.failures.push((p.line, bad));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_order_is_fixed() {
        let line = serde_json::to_string(&generate_record(Field::F397, 1, 0)).unwrap();
        let keys: Vec<usize> = ["\"op\"", "\"a\"", "\"b\"", "\"expected\"", "\"seed\""]
            .iter()
            .map(|k| line.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{line}");
    }

    #[test]
    fn generated_vectors_verify() {
        let text = to_lines(&generate(None, 6, 42));
        let report = verify(&text).unwrap();
        assert_eq!(report.records, 6);
        assert!(report.is_ok(), "{}", report.render());
        assert_eq!(report.methods.len(), 6 + 2 + 5);
    }

    #[test]
    fn parse_error_reports_line() {
        let mut text = to_lines(&generate(Some(Field::Fp2), 2, 0));
        text.push_str("{not json}\n");
        assert!(verify(&text).unwrap_err().starts_with("line 3:"));
    }
}
