use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use tritmul::lfsr::LfsrConfig;
use tritmul::pipeline::build_schedule;
use tritmul::tower::{fp2_mul, fp2_mul_schoolbook, fp6_mul_15, fp6_mul_18, fp6_mul_appendix, fp6_mul_schoolbook_flat};
use tritmul::{F97Element, Fp2Element, Fp6Element, MulCounter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    F397,
    Fp2,
    Fp6,
}

impl Field {
    pub const ALL: [Field; 3] = [Field::F397, Field::Fp2, Field::Fp6];

    /// Operation name used in vector files.
    pub fn op_name(self) -> &'static str {
        match self {
            Field::F397 => "f397_mul",
            Field::Fp2 => "fp2_mul",
            Field::Fp6 => "fp6_mul",
        }
    }

    pub fn from_op_name(name: &str) -> Option<Field> {
        Field::ALL.into_iter().find(|f| f.op_name() == name)
    }

    /// Every method that can multiply in this field.
    pub fn methods(self) -> Vec<Method> {
        match self {
            Field::F397 => {
                let mut m = vec![Method::Schoolbook];
                m.extend([1, 2, 4, 7, 14].map(|d| Method::Lfsr(Some(d))));
                m
            }
            Field::Fp2 => vec![Method::Schoolbook, Method::Karatsuba],
            Field::Fp6 => vec![
                Method::Schoolbook,
                Method::Karatsuba18,
                Method::New15,
                Method::Appendix,
                Method::Pipeline,
            ],
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::F397 => "f397",
            Field::Fp2 => "fp2",
            Field::Fp6 => "fp6",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Schoolbook,
    /// Digit-serial multiplier; the digit size may come from `--digit`.
    Lfsr(Option<usize>),
    Karatsuba,
    Karatsuba18,
    New15,
    Appendix,
    Pipeline,
}

impl Method {
    pub fn with_digit(self, digit: Option<usize>) -> Result<Method, String> {
        match (self, digit) {
            (Method::Lfsr(None), Some(d)) => Ok(Method::Lfsr(Some(d))),
            (Method::Lfsr(None), None) => Err("method lfsr needs a digit size: lfsr:D or --digit D".into()),
            (Method::Lfsr(Some(d)), Some(e)) if d != e => Err(format!("conflicting digit sizes {d} and {e}")),
            (m, _) => Ok(m),
        }
    }

    pub fn supports(self, field: Field) -> bool {
        match self {
            Method::Schoolbook => true,
            Method::Lfsr(_) => field == Field::F397,
            Method::Karatsuba => field == Field::Fp2,
            _ => field == Field::Fp6,
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "schoolbook" => Method::Schoolbook,
            "lfsr" => Method::Lfsr(None),
            "karatsuba" => Method::Karatsuba,
            "karatsuba18" => Method::Karatsuba18,
            "new15" => Method::New15,
            "appendix" => Method::Appendix,
            "pipeline" => Method::Pipeline,
            _ => match s.strip_prefix("lfsr:") {
                Some(d) => Method::Lfsr(Some(d.parse().map_err(|_| format!("bad digit size {d:?}"))?)),
                None => {
                    return Err(format!(
                        "unknown method {s:?}; expected schoolbook, lfsr:D, karatsuba, karatsuba18, new15, appendix or pipeline"
                    ))
                }
            },
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Schoolbook => f.write_str("schoolbook"),
            Method::Lfsr(Some(d)) => write!(f, "lfsr:{d}"),
            Method::Lfsr(None) => f.write_str("lfsr"),
            Method::Karatsuba => f.write_str("karatsuba"),
            Method::Karatsuba18 => f.write_str("karatsuba18"),
            Method::New15 => f.write_str("new15"),
            Method::Appendix => f.write_str("appendix"),
            Method::Pipeline => f.write_str("pipeline"),
        }
    }
}

/// Parsed operand of one of the three fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    F397(F97Element),
    Fp2(Fp2Element),
    Fp6(Box<Fp6Element>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::F397(x) => x.fmt(f),
            Value::Fp2(x) => x.fmt(f),
            Value::Fp6(x) => x.fmt(f),
        }
    }
}

/// Parses `text` as an element of `field`; errors name the operand.
pub fn parse_value(field: Field, name: &str, text: &str) -> Result<Value, String> {
    let text = text.trim();
    let parsed = match field {
        Field::F397 => text.parse().map(Value::F397),
        Field::Fp2 => text.parse().map(Value::Fp2),
        Field::Fp6 => text.parse().map(|x| Value::Fp6(Box::new(x))),
    };
    parsed.map_err(|e| format!("{name}: {e}"))
}

/// Multiplies two parsed values with `method`.
pub fn multiply(method: Method, a: &Value, b: &Value) -> Result<Value, String> {
    let mut ctr = MulCounter::new();
    Ok(match (a, b) {
        (Value::F397(x), Value::F397(y)) => Value::F397(match method {
            Method::Schoolbook => x * y,
            Method::Lfsr(Some(d)) => LfsrConfig::with_table_method(d).map_err(|e| e.to_string())?.run(x, y).0,
            m => return Err(format!("method {m} does not apply to f397")),
        }),
        (Value::Fp2(x), Value::Fp2(y)) => Value::Fp2(match method {
            Method::Schoolbook => fp2_mul_schoolbook(x, y, &mut ctr),
            Method::Karatsuba => fp2_mul(x, y, &mut ctr),
            m => return Err(format!("method {m} does not apply to fp2")),
        }),
        (Value::Fp6(x), Value::Fp6(y)) => Value::Fp6(Box::new(match method {
            Method::Schoolbook => fp6_mul_schoolbook_flat(x, y, &mut ctr),
            Method::Karatsuba18 => fp6_mul_18(x, y, &mut ctr),
            Method::New15 => fp6_mul_15(x, y, &mut ctr).0,
            Method::Appendix => fp6_mul_appendix(x, y).map_err(|e| e.to_string())?.0,
            Method::Pipeline => build_schedule().execute(x, y).result,
            m => return Err(format!("method {m} does not apply to fp6")),
        })),
        _ => return Err("operands belong to different fields".into()),
    })
}

/// Random element of `field`.
pub fn random_value<R: rand::Rng>(field: Field, rng: &mut R) -> Value {
    match field {
        Field::F397 => Value::F397(F97Element::random_from(rng)),
        Field::Fp2 => Value::Fp2(Fp2Element::random_from(rng)),
        Field::Fp6 => Value::Fp6(Box::new(Fp6Element::random_from(rng))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for f in Field::ALL {
            for m in f.methods() {
                assert!(m.supports(f));
                assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
            }
        }
        assert!("lfsr:x".parse::<Method>().is_err());
        assert!("fast".parse::<Method>().is_err());
    }

    #[test]
    fn digit_resolution() {
        assert_eq!(Method::Lfsr(None).with_digit(Some(7)), Ok(Method::Lfsr(Some(7))));
        assert!(Method::Lfsr(None).with_digit(None).is_err());
        assert!(Method::Lfsr(Some(4)).with_digit(Some(7)).is_err());
        assert_eq!(Method::New15.with_digit(Some(7)), Ok(Method::New15));
    }

    #[test]
    fn parse_errors_name_operand() {
        let err = parse_value(Field::F397, "b", "012").unwrap_err();
        assert!(err.starts_with("b: "), "{err}");
    }
}
