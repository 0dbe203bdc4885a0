use std::fmt::Write as _;

use classical_zeta::exact::{format_rational, parse_rational, BigRational, PiValue};
use classical_zeta::numeric::ComplexValue;
use serde::{Deserialize, Serialize};

/// The value carried by a record. The variant fixes the record kind, so an
/// exact kind can never hold a float and a numeric kind never a rational.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Payload {
    #[serde(with = "rational_text")]
    ExactRational(BigRational),
    ExactPiMonomial(PiValue),
    #[serde(with = "complex_parts")]
    NumericComplex(ComplexValue),
    BooleanCheck(bool),
    Residual(f64),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::ExactRational(_) => "exact_rational",
            Payload::ExactPiMonomial(_) => "exact_pi_monomial",
            Payload::NumericComplex(_) => "numeric_complex",
            Payload::BooleanCheck(_) => "boolean_check",
            Payload::Residual(_) => "residual",
        }
    }

    fn is_check(&self) -> bool {
        matches!(self, Payload::BooleanCheck(_) | Payload::Residual(_))
    }

    fn text(&self, booleans: (&str, &str)) -> String {
        match self {
            Payload::ExactRational(q) => format_rational(q),
            Payload::ExactPiMonomial(v) => v.to_string(),
            Payload::NumericComplex(z) => format_complex(*z),
            Payload::BooleanCheck(ok) => (if *ok { booleans.0 } else { booleans.1 }).to_string(),
            Payload::Residual(r) => format!("{r:e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    #[serde(flatten)]
    pub payload: Payload,
    pub route: String,
    pub argument: String,
}

impl OutputRecord {
    pub fn new(payload: Payload, route: impl Into<String>, argument: impl Into<String>) -> Self {
        OutputRecord {
            payload,
            route: route.into(),
            argument: argument.into(),
        }
    }

    pub fn failed_check(&self) -> bool {
        matches!(self.payload, Payload::BooleanCheck(false))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
}

/// `re+imi` with both parts in shortest round-trip form.
pub fn format_complex(z: ComplexValue) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?}{sign}{:?}i", z.re, z.im.abs())
}

pub fn render(records: &[OutputRecord], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(records).expect("records always serialize"),
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["kind", "route", "argument", "value"])
                .expect("in-memory write");
            for r in records {
                let value = r.payload.text(("true", "false"));
                writer
                    .write_record([r.payload.kind(), &r.route, &r.argument, &value])
                    .expect("in-memory write");
            }
            let bytes = writer.into_inner().expect("in-memory flush");
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
        Format::Md => {
            let mut out = String::from("| kind | route | argument | value |\n|---|---|---|---|\n");
            for r in records {
                let value = r.payload.text(("pass", "fail"));
                let _ = writeln!(out, "| {} | {} | {} | {} |", r.payload.kind(), r.route, r.argument, value);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in records {
                let value = r.payload.text(("pass", "fail"));
                if r.payload.is_check() {
                    let _ = writeln!(out, "{} {}: {value}", r.route, r.argument);
                } else {
                    let _ = writeln!(out, "{value}");
                }
            }
            out
        }
    }
}

mod rational_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

mod complex_parts {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &ComplexValue, s: S) -> Result<S::Ok, S::Error> {
        Parts { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ComplexValue, D::Error> {
        let p = Parts::deserialize(d)?;
        Ok(ComplexValue::new(p.re, p.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use classical_zeta::exact::ratio;

    #[test]
    fn json_shape() {
        let r = OutputRecord::new(
            Payload::ExactPiMonomial(PiValue::new(ratio(1, 6), 2)),
            "closed",
            "2",
        );
        assert_eq!(
            render(&[r], Format::Json),
            "[{\"kind\":\"exact_pi_monomial\",\"payload\":{\"coeff\":\"1/6\",\"pi_exp\":2},\"route\":\"closed\",\"argument\":\"2\"}]"
        );
        assert_eq!(render(&[], Format::Json), "[]");
    }

    #[test]
    fn markdown_booleans() {
        let r = OutputRecord::new(Payload::BooleanCheck(true), "funceq", "2");
        let md = render(&[r], Format::Md);
        assert!(md.ends_with("| boolean_check | funceq | 2 | pass |\n"));
    }

    #[test]
    fn csv_quotes_fields() {
        let r = OutputRecord::new(Payload::ExactRational(ratio(-1, 12)), "closed", "a,b");
        assert_eq!(
            render(&[r], Format::Csv),
            "kind,route,argument,value\nexact_rational,closed,\"a,b\",-1/12\n"
        );
    }

    #[test]
    fn complex_text() {
        assert_eq!(format_complex(ComplexValue::new(0.5, -3.0)), "0.5-3.0i");
        assert_eq!(format_complex(ComplexValue::new(-2.0, 0.0)), "-2.0+0.0i");
        assert_eq!(format_complex(ComplexValue::new(0.25, -1.5e-17)), "0.25-1.5e-17i");
    }

    #[test]
    fn kind_must_match_payload() {
        let bad = r#"{"kind":"exact_rational","payload":0.5,"route":"x","argument":"1"}"#;
        assert!(serde_json::from_str::<OutputRecord>(bad).is_err());
    }
}
