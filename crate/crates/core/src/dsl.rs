//! Line-oriented pathway scripts.
//!
//! One interaction per line, in time order:
//!
//! ```text
//! # ground-state bleaching, rephasing
//! bra 0 -> j
//! bra j -> 0
//! ket 0 -> k
//! emit k -> 0
//! ```
//!
//! A level is a symbol bound by the caller (`j`, `k`, `l` in the presets), a
//! level name from the model, or a plain index. The optional final `emit`
//! line names the radiating coherence `ket -> bra` and is checked against
//! the interactions. Each line may instead use keys, in any order:
//! `side=bra from=0 to=j`. Text after `#` is ignored.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::VibronicModel;
use crate::pathway::{Interaction, Kind, Pathway, Side};

/// Symbol bindings and an optional model for name lookup.
#[derive(Debug, Clone, Default)]
pub struct Resolver<'a> {
    pub bindings: HashMap<String, usize>,
    pub model: Option<&'a VibronicModel>,
}

impl<'a> Resolver<'a> {
    pub fn new(model: Option<&'a VibronicModel>) -> Self {
        Self {
            bindings: HashMap::new(),
            model,
        }
    }

    pub fn bind(mut self, name: &str, level: usize) -> Self {
        self.bindings.insert(name.to_string(), level);
        self
    }

    fn resolve(&self, token: &str) -> Option<usize> {
        if let Some(&i) = self.bindings.get(token) {
            return Some(i);
        }
        if let Some(i) = self.model.and_then(|m| m.level_index(token)) {
            return Some(i);
        }
        token.parse().ok()
    }
}

/// Word of a line with its 1-based starting column.
#[derive(Debug, Clone, Copy)]
struct Token<'s> {
    column: usize,
    text: &'s str,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    let spaced = |c: char| c.is_whitespace() || c == ',';
    for (i, c) in line.char_indices() {
        match (start, spaced(c)) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                out.push(Token {
                    column: s + 1,
                    text: &line[s..i],
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            column: s + 1,
            text: &line[s..],
        });
    }
    out
}

/// Splits `a->b`, `a -> b` and `a- >b` style arrows into two level tokens.
fn arrow<'s>(
    words: &[Token<'s>],
    line: usize,
    end_column: usize,
) -> Result<(Token<'s>, Token<'s>)> {
    let mut parts: Vec<Token<'s>> = Vec::new();
    let mut arrows = 0;
    for w in words {
        let mut rest = w.text;
        let mut col = w.column;
        while let Some(i) = rest.find("->") {
            if i > 0 {
                parts.push(Token {
                    column: col,
                    text: &rest[..i],
                });
            }
            arrows += 1;
            rest = &rest[i + 2..];
            col += i + 2;
        }
        if !rest.is_empty() {
            parts.push(Token {
                column: col,
                text: rest,
            });
        }
    }
    match (arrows, parts.as_slice()) {
        (1, [a, b]) => Ok((*a, *b)),
        _ => Err(Error::Parse {
            line,
            column: words.first().map_or(end_column, |w| w.column),
            msg: "expected `from -> to`".into(),
        }),
    }
}

enum Line<'s> {
    Interaction(Side, Token<'s>, Token<'s>),
    Emit(Token<'s>, Token<'s>),
}

fn parse_line<'s>(tokens: &[Token<'s>], line: usize, width: usize) -> Result<Line<'s>> {
    if tokens.iter().any(|t| t.text.contains('=')) {
        return parse_keyed(tokens, line);
    }
    let head = tokens[0];
    let (from, to) = arrow(&tokens[1..], line, width + 1)?;
    match head.text {
        "ket" => Ok(Line::Interaction(Side::Ket, from, to)),
        "bra" => Ok(Line::Interaction(Side::Bra, from, to)),
        "emit" => Ok(Line::Emit(from, to)),
        other => Err(Error::Parse {
            line,
            column: head.column,
            msg: format!("unknown keyword '{other}', expected ket, bra or emit"),
        }),
    }
}

fn parse_keyed<'s>(tokens: &[Token<'s>], line: usize) -> Result<Line<'s>> {
    let (mut side, mut from, mut to) = (None, None, None);
    for t in tokens {
        let Some((k, v)) = t.text.split_once('=') else {
            return Err(Error::Parse {
                line,
                column: t.column,
                msg: format!("expected key=value, found '{}'", t.text),
            });
        };
        let value = Token {
            column: t.column + k.len() + 1,
            text: v,
        };
        let slot = match k {
            "side" => &mut side,
            "from" => &mut from,
            "to" => &mut to,
            other => {
                return Err(Error::Parse {
                    line,
                    column: t.column,
                    msg: format!("unknown key '{other}', expected side, from or to"),
                })
            }
        };
        if slot.replace(value).is_some() {
            return Err(Error::Parse {
                line,
                column: t.column,
                msg: format!("key '{k}' given twice"),
            });
        }
    }
    let missing = |what: &str| Error::Parse {
        line,
        column: 1,
        msg: format!("missing key '{what}'"),
    };
    let side = side.ok_or_else(|| missing("side"))?;
    let (from, to) = (
        from.ok_or_else(|| missing("from"))?,
        to.ok_or_else(|| missing("to"))?,
    );
    match side.text {
        "ket" => Ok(Line::Interaction(Side::Ket, from, to)),
        "bra" => Ok(Line::Interaction(Side::Bra, from, to)),
        "emit" => Ok(Line::Emit(from, to)),
        other => Err(Error::Parse {
            line,
            column: side.column,
            msg: format!("unknown side '{other}'"),
        }),
    }
}

/// Parses a pathway script.
pub fn parse_pathway(text: &str, resolver: &Resolver) -> Result<Pathway> {
    let mut interactions = Vec::new();
    let (mut ket, mut bra) = (0usize, 0usize);
    let mut emitted = false;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content);
        if tokens.is_empty() {
            continue;
        }
        if emitted {
            return Err(Error::Parse {
                line: line_no,
                column: tokens[0].column,
                msg: "nothing may follow `emit`".into(),
            });
        }
        let level = |t: Token| -> Result<usize> {
            let i = resolver.resolve(t.text).ok_or_else(|| Error::Parse {
                line: line_no,
                column: t.column,
                msg: format!("unknown level '{}'", t.text),
            })?;
            if let Some(m) = resolver.model {
                if i >= m.n_levels() {
                    return Err(Error::Parse {
                        line: line_no,
                        column: t.column,
                        msg: format!("level {i} is outside the model's {} levels", m.n_levels()),
                    });
                }
            }
            Ok(i)
        };
        match parse_line(&tokens, line_no, content.len())? {
            Line::Interaction(side, f, t) => {
                let (from, to) = (level(f)?, level(t)?);
                let cur = if side == Side::Ket {
                    &mut ket
                } else {
                    &mut bra
                };
                if from != *cur {
                    return Err(Error::Parse {
                        line: line_no,
                        column: f.column,
                        msg: format!("the {side} is in level {cur}, not {from}"),
                    });
                }
                if from == to {
                    return Err(Error::Parse {
                        line: line_no,
                        column: t.column,
                        msg: "interaction does not change level".into(),
                    });
                }
                *cur = to;
                interactions.push(Interaction { side, from, to });
            }
            Line::Emit(f, t) => {
                let (k, b) = (level(f)?, level(t)?);
                if (k, b) != (ket, bra) {
                    return Err(Error::Parse {
                        line: line_no,
                        column: f.column,
                        msg: format!("the radiating coherence is {ket} -> {bra}, not {k} -> {b}"),
                    });
                }
                emitted = true;
            }
        }
    }
    if interactions.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            msg: "no interactions".into(),
        });
    }
    Pathway::new(interactions)
}

/// Symbolic script of a third-order kind in the levels `j`, `k`, `l`.
pub fn preset_script(kind: Kind) -> String {
    let name = |i: usize| ["0", "j", "k", "l"][i];
    let p = Pathway::new(kind.interactions(1, 2, 3).to_vec()).expect("presets are valid");
    let mut s = String::new();
    for it in p.interactions() {
        s.push_str(&format!(
            "{} {} -> {}\n",
            it.side,
            name(it.from),
            name(it.to)
        ));
    }
    let (b, k) = p.detection();
    s.push_str(&format!("emit {} -> {}\n", name(k), name(b)));
    s
}

/// Script of a pathway in plain level indices.
pub fn to_script(p: &Pathway) -> String {
    let mut s = String::new();
    for it in p.interactions() {
        s.push_str(&format!("{} {} -> {}\n", it.side, it.from, it.to));
    }
    let (b, k) = p.detection();
    s.push_str(&format!("emit {k} -> {b}\n"));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathway::Contribution;

    #[test]
    fn presets_round_trip() {
        for kind in Kind::ALL {
            let r = Resolver::new(None).bind("j", 1).bind("k", 2).bind("l", 3);
            let p = parse_pathway(&preset_script(kind), &r).unwrap();
            assert_eq!(p, Contribution::new(kind, 1, 2, 3).pathway(), "{kind}");
        }
    }

    #[test]
    fn bleach_script_with_names() {
        let m = VibronicModel::v_scheme([1.0, 1.3], [0.4, -0.7]);
        let text = "# bleach\nbra g->e1\nbra e1 -> g\nket g -> e2\nemit e2 -> g\n";
        let p = parse_pathway(text, &Resolver::new(Some(&m))).unwrap();
        assert_eq!(p, Contribution::new(Kind::GsbR, 1, 2, 0).pathway());
    }

    #[test]
    fn keyed_form_matches() {
        let a = parse_pathway("ket 0->1\nbra 0->1\nket 1->0", &Resolver::default()).unwrap();
        let b = parse_pathway(
            "side=ket from=0 to=1\nto=1, side=bra, from=0\nside=ket from=1 to=0",
            &Resolver::default(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wrong_departure_is_located() {
        match parse_pathway("ket 0 -> 1\nket 2 -> 0\n", &Resolver::default()) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_lines() {
        let r = Resolver::default();
        assert!(matches!(
            parse_pathway("kat 0->1", &r),
            Err(Error::Parse {
                line: 1,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_pathway("ket 0 1", &r),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_pathway("ket 0->x", &r),
            Err(Error::Parse {
                line: 1,
                column: 8,
                ..
            })
        ));
        assert!(matches!(
            parse_pathway("ket 0->1\nemit 0->0", &r),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_pathway("\n# none\n", &r),
            Err(Error::Parse { .. })
        ));
        let m = VibronicModel::two_level(1.0, 0.3);
        assert!(matches!(
            parse_pathway("ket 0->2", &Resolver::new(Some(&m))),
            Err(Error::Parse { column: 8, .. })
        ));
    }
}
