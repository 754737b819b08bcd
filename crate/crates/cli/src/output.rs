use std::io::Write;

use runprob::Rational;
use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

/// Fixed CSV header for value records.
pub const CSV_HEADER: [&str; 7] = ["n", "r", "p", "method", "value_exact", "value_decimal", "elapsed_ns"];

/// One computed probability. `value_exact` is absent in float mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub n: u64,
    pub r: u64,
    pub p: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_exact: Option<String>,
    pub value_decimal: String,
    pub elapsed_ns: u64,
}

/// A probability from either arithmetic mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn exact_text(&self) -> Option<String> {
        match self {
            Value::Exact(v) => Some(v.to_string()),
            Value::Float(_) => None,
        }
    }

    pub fn decimal(&self, digits: u16) -> String {
        match self {
            Value::Exact(v) => v.to_decimal(digits as usize),
            Value::Float(v) => decimal_f64(*v, digits),
        }
    }
}

pub fn decimal_f64(v: f64, digits: u16) -> String {
    match Rational::from_f64(v) {
        Some(x) => x.to_decimal(digits as usize),
        None => v.to_string(),
    }
}

impl OutputRecord {
    pub fn fields(&self) -> [String; 7] {
        [
            self.n.to_string(),
            self.r.to_string(),
            self.p.clone(),
            self.method.clone(),
            self.value_exact.clone().unwrap_or_default(),
            self.value_decimal.clone(),
            self.elapsed_ns.to_string(),
        ]
    }

    pub fn plain(&self) -> String {
        let mut line = format!("n={} r={} p={} method={}", self.n, self.r, self.p, self.method);
        if let Some(exact) = &self.value_exact {
            line.push_str(&format!(" value_exact={exact}"));
        }
        line.push_str(&format!(" value_decimal={} elapsed_ns={}", self.value_decimal, self.elapsed_ns));
        line
    }
}

pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(out)
}

/// Writes records; `single` emits a bare JSON object instead of an array.
pub fn write_records(out: &mut impl Write, format: Format, records: &[OutputRecord], single: bool) -> Result<(), CliError> {
    match format {
        Format::Plain => {
            for rec in records {
                writeln!(out, "{}", rec.plain())?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(&mut *out);
            w.write_record(CSV_HEADER)?;
            for rec in records {
                w.write_record(rec.fields())?;
            }
            w.flush()?;
        }
        Format::Json => {
            if single && records.len() == 1 {
                serde_json::to_writer(&mut *out, &records[0])?;
            } else {
                serde_json::to_writer(&mut *out, records)?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(exact: Option<&str>) -> OutputRecord {
        OutputRecord {
            n: 10,
            r: 3,
            p: "1/2".into(),
            method: "auto".into(),
            value_exact: exact.map(Into::into),
            value_decimal: "0.5078125".into(),
            elapsed_ns: 0,
        }
    }

    fn render(format: Format, records: &[OutputRecord], single: bool) -> String {
        let mut buf = Vec::new();
        write_records(&mut buf, format, records, single).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_layout() {
        let text = render(Format::Csv, &[record(Some("65/128")), record(None)], false);
        assert_eq!(
            text,
            "n,r,p,method,value_exact,value_decimal,elapsed_ns\n10,3,1/2,auto,65/128,0.5078125,0\n10,3,1/2,auto,,0.5078125,0\n"
        );
    }

    #[test]
    fn json_layout() {
        assert_eq!(
            render(Format::Json, &[record(Some("65/128"))], true),
            "{\"n\":10,\"r\":3,\"p\":\"1/2\",\"method\":\"auto\",\"value_exact\":\"65/128\",\"value_decimal\":\"0.5078125\",\"elapsed_ns\":0}\n"
        );
        let float = render(Format::Json, &[record(None)], false);
        assert!(float.starts_with('[') && !float.contains("value_exact"));
    }

    #[test]
    fn plain_layout() {
        assert_eq!(
            render(Format::Plain, &[record(Some("65/128"))], true),
            "n=10 r=3 p=1/2 method=auto value_exact=65/128 value_decimal=0.5078125 elapsed_ns=0\n"
        );
    }

    #[test]
    fn float_decimals() {
        assert_eq!(decimal_f64(0.5078125, 10), "0.5078125");
        assert_eq!(decimal_f64(0.1, 10), "0.1");
        assert_eq!(decimal_f64(1.0 / 3.0, 4), "0.3333");
    }
}
