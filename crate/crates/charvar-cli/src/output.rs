use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// A titled table rendered as CSV or as a Markdown section.
pub struct Section {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: &str, headers: &[&str]) -> Section {
        Section { title: title.to_string(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    /// Two-column table of named values.
    pub fn key_value(title: &str, pairs: Vec<(&str, String)>) -> Section {
        let mut s = Section::new(title, &["field", "value"]);
        for (k, v) in pairs {
            s.push(vec![k.to_string(), v]);
        }
        s
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

fn markdown_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn render_markdown(heading: &str, sections: &[Section]) -> String {
    let mut out = format!("# {heading}\n");
    for s in sections {
        out.push_str(&format!("\n## {}\n\n", s.title));
        if s.rows.is_empty() {
            out.push_str("(none)\n");
            continue;
        }
        out.push_str(&format!("| {} |\n", s.headers.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(s.headers.len())));
        for r in &s.rows {
            let cells: Vec<String> = r.iter().map(|c| markdown_cell(c)).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
    }
    out
}

/// CSV output: one block per section, blocks separated by a blank line.
/// With several sections every block starts with a `# title` line.
fn render_csv(sections: &[Section]) -> String {
    let mut blocks = Vec::new();
    for s in sections {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&s.headers).expect("in-memory csv write");
        for r in &s.rows {
            w.write_record(r).expect("in-memory csv write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8");
        if sections.len() > 1 {
            blocks.push(format!("# {}\n{body}", s.title));
        } else {
            blocks.push(body);
        }
    }
    blocks.join("\n")
}

pub fn render<T: Serialize>(format: Format, heading: &str, report: &T, sections: &[Section]) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize to json");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(sections),
        Format::Md => render_markdown(heading, sections),
    }
}
