use std::fmt::Display;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// `key: value` per line
    Plain,
    /// values only, one per line
    Lines,
}

/// Ordered `key: value` pairs; repeated keys are allowed.
#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn put(&mut self, key: &str, value: impl Display) -> &mut Report {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn list<T: Display>(&mut self, key: &str, values: impl IntoIterator<Item = T>) -> &mut Report {
        let joined: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
        self.put(key, joined.join(","))
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            match format {
                Format::Plain => {
                    out.push_str(k);
                    out.push_str(": ");
                }
                Format::Lines => {}
            }
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
