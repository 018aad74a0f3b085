//! Interactive stepping loop. Commands mirror the scenario step vocabulary
//! and share its execution path, so a transcript and the equivalent scenario
//! file reach identical states. `undo` pops the state stack.

use crate::builtin::builtin_scenario;
use crate::error::{Error, Result};
use crate::scenario::{Report, ResolutionState, Step};
use std::io::{BufRead, Write};

pub struct Repl {
    state: Option<ResolutionState>,
    undo_stack: Vec<ResolutionState>,
}

impl Default for Repl {
    fn default() -> Self {
        Repl::new()
    }
}

impl Repl {
    pub fn new() -> Repl {
        Repl {
            state: None,
            undo_stack: Vec::new(),
        }
    }

    pub fn state(&self) -> Option<&ResolutionState> {
        self.state.as_ref()
    }

    /// Execute one command line; returns the lines to print.
    pub fn execute(&mut self, line: &str) -> Vec<String> {
        match self.dispatch(line) {
            Ok(lines) => lines,
            Err(e) => vec![format!("error: {e}")],
        }
    }

    fn dispatch(&mut self, line: &str) -> Result<Vec<String>> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(Vec::new());
        }
        let (cmd, rest) = match line.split_once(char::is_whitespace) {
            Some((c, r)) => (c, r.trim()),
            None => (line, ""),
        };
        match cmd {
            "help" => Ok(vec![
                "commands: load <hauser|txyz>, show, blowup <v,v,..> chart=<v>,".into(),
                "  tau [c,c,..], slope [var], clean, elim, exponents, sing [k],".into(),
                "  rename <old> <new> [shift], monomial, resolve, lift <v,v;..>, undo, quit"
                    .into(),
            ]),
            "load" => {
                let scenario = builtin_scenario(rest)
                    .ok_or_else(|| Error::Scenario(format!("no built-in scenario {rest}")))?;
                let state = ResolutionState::from_scenario(&scenario)?;
                self.undo_stack.clear();
                self.state = Some(state);
                Ok(vec![format!("loaded {rest}")])
            }
            "undo" => match self.undo_stack.pop() {
                Some(prev) => {
                    self.state = Some(prev);
                    Ok(vec!["undone".into()])
                }
                None => Ok(vec!["nothing to undo".into()]),
            },
            _ => {
                let step = self.parse_step(cmd, rest)?;
                let state = self
                    .state
                    .as_mut()
                    .ok_or_else(|| Error::Scenario("no scenario loaded".into()))?;
                let before = state.clone();
                let mut report = Report::default();
                match state.apply(&step, &mut report) {
                    Ok(_) => {
                        self.undo_stack.push(before);
                        Ok(report.lines)
                    }
                    Err(e) => {
                        // state is preserved on errors
                        *state = before;
                        Err(e)
                    }
                }
            }
        }
    }

    fn parse_step(&self, cmd: &str, rest: &str) -> Result<Step> {
        let bad = |msg: &str| Error::Scenario(format!("{cmd}: {msg}"));
        match cmd {
            "show" => Ok(Step::Show),
            "diff_close" | "close" => Ok(Step::DiffClose),
            "elim" => Ok(Step::Elim),
            "clean" => Ok(Step::Clean),
            "exponents" => Ok(Step::Exponents),
            "monomial" => Ok(Step::Monomial),
            "resolve" => Ok(Step::Resolve),
            "sing" => {
                let ext = if rest.is_empty() { 1 } else { rest.parse().map_err(|_| bad("usage: sing [k]"))? };
                Ok(Step::Sing { ext })
            }
            "tau" => {
                let point = if rest.is_empty() {
                    let n = self
                        .state
                        .as_ref()
                        .map(|s| s.ring().nvars())
                        .unwrap_or(0);
                    vec![0; n]
                } else {
                    rest.split(',')
                        .map(|c| c.trim().parse().map_err(|_| bad("usage: tau [c,c,..]")))
                        .collect::<Result<Vec<i64>>>()?
                };
                Ok(Step::Tau { point })
            }
            "slope" => Ok(Step::Slope {
                divisor: if rest.is_empty() {
                    None
                } else {
                    Some(rest.to_string())
                },
            }),
            "blowup" => {
                let (center_part, chart) = rest
                    .split_once("chart=")
                    .ok_or_else(|| bad("usage: blowup Z,X,Y chart=Y"))?;
                let center: Vec<String> = center_part
                    .trim()
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                if center.is_empty() {
                    return Err(bad("empty center"));
                }
                Ok(Step::Blowup {
                    center,
                    chart: chart.trim().to_string(),
                    expect_gens: None,
                    expect_elim: None,
                })
            }
            "rename" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                match parts.as_slice() {
                    [old, new] => Ok(Step::Rename {
                        from: old.to_string(),
                        to: new.to_string(),
                        shift: 0,
                    }),
                    [old, new, shift] => Ok(Step::Rename {
                        from: old.to_string(),
                        to: new.to_string(),
                        shift: shift.parse().map_err(|_| bad("bad shift"))?,
                    }),
                    _ => Err(bad("usage: rename <old> <new> [shift]")),
                }
            }
            "lift" => {
                let centers: Vec<Vec<String>> = rest
                    .split(';')
                    .map(|c| {
                        c.split(',')
                            .map(|s| s.trim().to_string())
                            .filter(|s| !s.is_empty())
                            .collect()
                    })
                    .filter(|c: &Vec<String>| !c.is_empty())
                    .collect();
                if centers.is_empty() {
                    return Err(bad("usage: lift X,Y;X"));
                }
                Ok(Step::Lift { centers })
            }
            _ => Err(Error::Scenario(format!("unknown command {cmd}"))),
        }
    }
}

/// Run the interactive loop over stdio.
pub fn run_repl(input: impl BufRead, mut output: impl Write) -> std::io::Result<()> {
    let mut repl = Repl::new();
    writeln!(output, "{} — type 'help'", crate::scenario::REPORT_VERSION)?;
    for line in input.lines() {
        let line = line?;
        if matches!(line.trim(), "quit" | "exit") {
            break;
        }
        for out in repl.execute(&line) {
            writeln!(output, "{out}")?;
        }
    }
    Ok(())
}
