//! Serialization of diagrams and the bundled corpus.

use serde::{Deserialize, Serialize};

use crate::diagram::{parse_pd, Diagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Environment variable naming a corpus file to use instead of the bundled one.
pub const CORPUS_ENV: &str = "SEIFERT_CORPUS";

const BUNDLED_CORPUS: &str = include_str!("../data/corpus.jsonl");

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            pd: Vec<[u32; 4]>,
        }
        Repr { pd: self.pd() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            pd: Vec<[u32; 4]>,
        }
        let r = Repr::deserialize(d)?;
        Diagram::from_pd(&r.pd).map_err(serde::de::Error::custom)
    }
}

/// A PD code with a name, as stored in diagram files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedDiagram {
    pub name: String,
    pub pd: String,
}

impl NamedDiagram {
    pub fn diagram(&self) -> Result<Diagram> {
        parse_pd(&self.pd)
    }
}

/// One corpus line. `delta0` lists coefficients from `t^0` upwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    pub delta0: Vec<i64>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<Diagram> {
        parse_pd(&self.pd)
    }

    pub fn expected_delta0(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(&self.delta0)
    }
}

/// Parses JSON lines; blank lines and lines starting with `#` are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Malformed(format!("corpus line {}: {e}", i + 1))))
        .collect()
}

pub fn bundled_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUNDLED_CORPUS).expect("bundled corpus parses")
}

/// The corpus named by `SEIFERT_CORPUS`, or the bundled one.
pub fn load_corpus() -> Result<Vec<CorpusEntry>> {
    match std::env::var_os(CORPUS_ENV) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.to_string_lossy())))?;
            parse_corpus(&text)
        }
        None => Ok(bundled_corpus()),
    }
}

/// Reads diagrams from a file. Accepts JSON lines of `{name, pd}` objects
/// or plain lines of the form `name: X(...) X(...)`.
pub fn parse_diagram_file(text: &str) -> Result<Vec<NamedDiagram>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('{') {
            let nd: NamedDiagram =
                serde_json::from_str(line).map_err(|e| Error::Malformed(format!("line {}: {e}", i + 1)))?;
            out.push(nd);
        } else if let Some((name, pd)) = line.split_once(':') {
            out.push(NamedDiagram { name: name.trim().to_string(), pd: pd.trim().to_string() });
        } else {
            return Err(Error::Malformed(format!("line {}: expected `name: PD` or a JSON object", i + 1)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        let c = bundled_corpus();
        assert!(c.len() >= 12);
        for e in &c {
            e.diagram().unwrap();
            assert!(e.expected_delta0().eval_at_zero().unwrap() > 0.into());
        }
        let names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        for want in ["unknot", "trefoil", "figure-eight", "hopf", "7_4", "granny", "square"] {
            assert!(names.contains(&want), "{want}");
        }
        for k in 2..=6 {
            assert!(names.contains(&format!("torus-2-{k}").as_str()));
        }
    }

    #[test]
    fn diagram_json_round_trip() {
        for e in bundled_corpus() {
            let d = e.diagram().unwrap();
            let s = serde_json::to_string(&d).unwrap();
            let back: Diagram = serde_json::from_str(&s).unwrap();
            assert_eq!(back, d);
        }
        assert!(serde_json::from_str::<Diagram>(r#"{"pd":[[1,1,2,2]]}"#).is_err());
    }

    #[test]
    fn diagram_files() {
        let text = "# comment\ntrefoil: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n{\"name\":\"u\",\"pd\":\"\"}\n";
        let ds = parse_diagram_file(text).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[0].name, "trefoil");
        assert_eq!(ds[1].diagram().unwrap().num_crossings(), 0);
        assert!(parse_diagram_file("nonsense").is_err());
    }

    #[test]
    fn corpus_errors() {
        assert!(matches!(parse_corpus("{not json"), Err(Error::Malformed(_))));
    }
}
