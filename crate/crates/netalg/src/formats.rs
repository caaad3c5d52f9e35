//! Environment documents and stream files.

use std::collections::BTreeMap;

use netalg_core::{CellDef, CellEnv, Datum, Sort, Stream};
use serde::Deserialize;

use crate::term_syntax::is_identifier;
use crate::ParseError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvDoc {
    domain: Vec<String>,
    #[serde(default)]
    cells: BTreeMap<String, CellDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    arity: [usize; 2],
    init: Vec<String>,
    /// Input tuple joined by `,` to output tuple.
    table: BTreeMap<String, Vec<String>>,
}

/// Reads a JSON environment document, checking that every table is total and
/// every value lies in the domain.
pub fn parse_env(text: &str) -> Result<CellEnv, ParseError> {
    let doc: EnvDoc = serde_json::from_str(text)?;
    let mut env = CellEnv::new(doc.domain)?;
    for (name, cell) in doc.cells {
        if !is_identifier(&name) {
            return Err(ParseError::BadCellName(name));
        }
        let def = read_cell(&env, &name, &cell)?;
        env.insert(name, def)?;
    }
    Ok(env)
}

fn read_cell(env: &CellEnv, name: &str, cell: &CellDoc) -> Result<CellDef, ParseError> {
    let sort = Sort::new(cell.arity[0], cell.arity[1]);
    let value = |symbol: &str| {
        env.datum(symbol)
            .ok_or_else(|| ParseError::ValueOutsideDomain {
                cell: name.into(),
                value: symbol.into(),
            })
    };
    let tuple = |symbols: &[String], what: &str| -> Result<Vec<Datum>, ParseError> {
        if symbols.len() != sort.outputs {
            return Err(ParseError::BadArity {
                cell: name.into(),
                detail: format!(
                    "{what} has {} values, expected {}",
                    symbols.len(),
                    sort.outputs
                ),
            });
        }
        symbols.iter().map(|s| value(s)).collect()
    };
    let init = tuple(&cell.init, "initial tuple")?;

    let domain = env.domain_size();
    let mut failure = None;
    let def = CellDef::from_fn(sort, domain, init, |input| {
        let key = input
            .iter()
            .map(|&d| env.symbol(d))
            .collect::<Vec<_>>()
            .join(",");
        let row = cell
            .table
            .get(&key)
            .ok_or_else(|| ParseError::MissingTableRow {
                cell: name.into(),
                input: key.clone(),
            })
            .and_then(|out| tuple(out, &format!("row `{key}`")));
        row.unwrap_or_else(|e| {
            failure.get_or_insert(e);
            vec![Datum(0); sort.outputs]
        })
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let def = def?;
    let rows = domain.pow(sort.inputs as u32);
    if cell.table.len() != rows {
        // extra keys can only mention symbols outside the domain or have the
        // wrong number of components
        for key in cell.table.keys() {
            let parts: Vec<&str> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',').collect()
            };
            if parts.len() != sort.inputs {
                return Err(ParseError::BadArity {
                    cell: name.into(),
                    detail: format!(
                        "row `{key}` has {} inputs, expected {}",
                        parts.len(),
                        sort.inputs
                    ),
                });
            }
            for p in parts {
                value(p)?;
            }
        }
    }
    Ok(def)
}

/// Reads `m` streams of length `horizon` from lines `port: token*`, ports
/// numbered from 1 and `~` standing for a tick. Missing ports and positions
/// are ticks.
pub fn parse_streams(
    text: &str,
    m: usize,
    horizon: usize,
    env: &CellEnv,
) -> Result<Vec<Stream>, ParseError> {
    let mut streams: Vec<Option<Stream>> = vec![None; m];
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (port, tokens) = line
            .split_once(':')
            .ok_or(ParseError::StreamLine { line: line_no + 1 })?;
        let port: usize = port
            .trim()
            .parse()
            .map_err(|_| ParseError::StreamLine { line: line_no + 1 })?;
        if port == 0 || port > m {
            return Err(ParseError::PortOutOfRange { port, ports: m });
        }
        if streams[port - 1].is_some() {
            return Err(ParseError::DuplicatePort(port));
        }
        let values = tokens
            .split_whitespace()
            .map(|tok| match tok {
                "~" => Ok(None),
                _ => env
                    .datum(tok)
                    .map(Some)
                    .ok_or_else(|| ParseError::UnknownSymbol {
                        line: line_no + 1,
                        token: tok.into(),
                    }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        streams[port - 1] = Some(Stream::new(values));
    }
    Ok(streams
        .into_iter()
        .map(|s| s.unwrap_or_default().truncated(horizon))
        .collect())
}

/// One line `port: token*` per stream, exactly `horizon` tokens each.
pub fn print_streams(streams: &[Stream], horizon: usize, env: &CellEnv) -> String {
    let mut out = String::new();
    for (i, s) in streams.iter().enumerate() {
        out.push_str(&format!("{}:", i + 1));
        for v in s.window(horizon) {
            out.push(' ');
            out.push_str(v.map_or("~", |d| env.symbol(d)));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUCC2: &str = r#"{"domain": ["0","1"], "cells": {"succ": {"arity": [1,1], "init": ["0"], "table": {"0": ["1"], "1": ["0"]}}}}"#;

    fn d(x: u16) -> Option<Datum> {
        Some(Datum(x))
    }

    #[test]
    fn reads_successor_cell() {
        let env = parse_env(SUCC2).unwrap();
        let succ = env.cell("succ").unwrap();
        assert_eq!(succ.init, vec![Datum(0)]);
        assert_eq!(env.apply("succ", &[Datum(0)]).unwrap(), &[Datum(1)]);
        assert_eq!(env.apply("succ", &[Datum(1)]).unwrap(), &[Datum(0)]);
    }

    #[test]
    fn missing_row() {
        let doc = SUCC2.replace(r#", "1": ["0"]"#, "");
        assert!(matches!(
            parse_env(&doc),
            Err(ParseError::MissingTableRow { cell, input }) if cell == "succ" && input == "1"
        ));
    }

    #[test]
    fn init_arity() {
        let doc = SUCC2.replace(r#""init": ["0"]"#, r#""init": ["0", "1"]"#);
        assert!(matches!(parse_env(&doc), Err(ParseError::BadArity { .. })));
    }

    #[test]
    fn value_outside_domain() {
        let doc = SUCC2.replace(r#""1": ["0"]"#, r#""1": ["7"]"#);
        assert!(matches!(
            parse_env(&doc),
            Err(ParseError::ValueOutsideDomain { .. })
        ));
        let doc = SUCC2.replace(r#""1": ["0"]"#, r#""1": ["0"], "2": ["0"]"#);
        assert!(matches!(
            parse_env(&doc),
            Err(ParseError::ValueOutsideDomain { .. })
        ));
    }

    #[test]
    fn multi_port_keys() {
        let doc = r#"{"domain": ["a","b"], "cells": {"and": {"arity": [2,1], "init": ["a"],
            "table": {"a,a": ["a"], "a,b": ["a"], "b,a": ["a"], "b,b": ["b"]}},
            "one": {"arity": [0,1], "init": ["b"], "table": {"": ["b"]}}}}"#;
        let env = parse_env(doc).unwrap();
        assert_eq!(
            env.apply("and", &[Datum(1), Datum(1)]).unwrap(),
            &[Datum(1)]
        );
        assert_eq!(
            env.apply("and", &[Datum(1), Datum(0)]).unwrap(),
            &[Datum(0)]
        );
        assert_eq!(env.cell("one").unwrap().sort, Sort::new(0, 1));
    }

    #[test]
    fn stream_file_examples() {
        let env = CellEnv::new(["a", "b", "c"].map(String::from).to_vec()).unwrap();
        let s = parse_streams("1: a b ~ c", 1, 6, &env).unwrap();
        assert_eq!(s[0].window(6), vec![d(0), d(1), None, d(2), None, None]);
        assert_eq!(s[0].prefix().len(), 6);
        let s = parse_streams("", 2, 4, &env).unwrap();
        assert!(s.iter().all(|s| *s == Stream::ticks()));
        assert!(matches!(
            parse_streams("3: a", 2, 4, &env),
            Err(ParseError::PortOutOfRange { port: 3, ports: 2 })
        ));
        assert!(matches!(
            parse_streams("1: a\n1: b", 2, 4, &env),
            Err(ParseError::DuplicatePort(1))
        ));
        assert!(matches!(
            parse_streams("2: a z", 2, 4, &env),
            Err(ParseError::UnknownSymbol { line: 1, .. })
        ));
    }

    #[test]
    fn printing_streams() {
        let env = CellEnv::numeric(4).unwrap();
        let s = vec![Stream::from_data([0, 1]), Stream::ticks()];
        assert_eq!(print_streams(&s, 3, &env), "1: 0 1 ~\n2: ~ ~ ~\n");
    }
}
