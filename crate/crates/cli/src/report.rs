use std::io::{self, Write};
use std::time::Duration;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Result of one command. Parameters are small integers and stay native
/// JSON numbers; every computed value is carried as a string so exact
/// integers and `p/q` rationals survive any consumer.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: &'static str,
    pub params: Vec<(&'static str, Value)>,
    pub results: Vec<(String, Value)>,
    pub method: &'static str,
    pub elapsed: Option<Duration>,
}

impl RunReport {
    pub fn new(command: &'static str, method: &'static str) -> Self {
        Self {
            command,
            params: Vec::new(),
            results: Vec::new(),
            method,
            elapsed: None,
        }
    }

    pub fn param(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.params.push((key, value.into()));
        self
    }

    pub fn result(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.results.push((key.into(), value.into()));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), self.command.into());
        for (k, v) in &self.params {
            map.insert((*k).into(), v.clone());
        }
        for (k, v) in &self.results {
            map.insert(k.clone(), v.clone());
        }
        map.insert("method".into(), self.method.into());
        if let Some(e) = self.elapsed {
            map.insert("elapsed_ms".into(), (e.as_secs_f64() * 1e3).into());
        }
        Value::Object(map)
    }

    /// One CSV row per scalar result; arrays expand to `key[i]` rows.
    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["command".to_string()];
        header.extend(self.params.iter().map(|(k, _)| k.to_string()));
        header.extend(["method".into(), "key".into(), "value".into()]);
        w.write_record(&header)?;
        let prefix: Vec<String> = std::iter::once(self.command.to_string())
            .chain(self.params.iter().map(|(_, v)| plain(v)))
            .collect();
        let mut rows: Vec<(String, String)> = Vec::new();
        for (k, v) in &self.results {
            match v {
                Value::Array(items) => {
                    rows.extend(items.iter().enumerate().map(|(i, x)| (format!("{k}[{i}]"), plain(x))))
                }
                other => rows.push((k.clone(), plain(other))),
            }
        }
        for (k, v) in rows {
            let mut rec = prefix.clone();
            rec.extend([self.method.to_string(), k, v]);
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn emit(&self, format: Format) -> io::Result<()> {
        let stdout = io::stdout();
        match format {
            Format::Json => writeln!(stdout.lock(), "{}", self.to_json()),
            Format::Csv => self.write_csv(stdout.lock()).map_err(io::Error::other),
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_values_as_strings() {
        let r = RunReport::new("volume", "formula").param("n", 8).result("volume", "41822865/16");
        assert_eq!(r.to_json().to_string(), r#"{"command":"volume","n":8,"volume":"41822865/16","method":"formula"}"#);
    }

    #[test]
    fn csv_expands_arrays() {
        let r = RunReport::new("fvector", "formula")
            .param("n", 2)
            .result("f", vec!["3", "3"]);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "command,n,method,key,value\nfvector,2,formula,f[0],3\nfvector,2,formula,f[1],3\n"
        );
    }
}
