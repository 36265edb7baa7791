//! Line-oriented text format.
//!
//! ```text
//! automaton <name>
//! type star|buchi|rabin-buchi
//! events <label>:c|:u ...
//! initial <state>
//! trans <state> <event> <state>
//! buchi <state> ...
//! rabin R <state> ... ; I <state> ...
//! ```
//!
//! Blank lines and `#` comments are ignored; any other key is an error.
//! State names are arbitrary tokens, numbered in order of first appearance.
//! [`to_text`] writes numeric state names, so `parse(to_text(a)) == a` for
//! any automaton whose states are numbered the way `parse` numbers them
//! (e.g. after [`crate::ops::reachable_trim`]).

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Event};
use crate::automaton::{Automaton, Kind, RabinPair, StateSet};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

#[derive(Default)]
struct States {
    index: HashMap<String, usize>,
}

impl States {
    fn id(&mut self, name: &str) -> usize {
        let n = self.index.len();
        *self.index.entry(name.to_string()).or_insert(n)
    }
}

pub fn parse(text: &str) -> Result<Automaton> {
    let mut name: Option<String> = None;
    let mut kind: Option<Kind> = None;
    let mut events: Option<(usize, Vec<Event>)> = None;
    let mut initial: Option<(usize, usize)> = None;
    let mut trans: Vec<(usize, usize, String, usize)> = Vec::new();
    let mut buchi: Option<StateSet> = None;
    let mut rabin: Vec<RabinPair> = Vec::new();
    let mut states = States::default();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap();
        let rest: Vec<&str> = toks.collect();
        match key {
            "automaton" => {
                if name.is_some() {
                    return Err(perr(ln, "duplicate `automaton` line"));
                }
                if rest.is_empty() {
                    return Err(perr(ln, "missing automaton name"));
                }
                name = Some(rest.join(" "));
            }
            "type" => {
                if kind.is_some() {
                    return Err(perr(ln, "duplicate `type` line"));
                }
                kind = Some(match rest.as_slice() {
                    ["star"] => Kind::Star,
                    ["buchi"] => Kind::Buchi,
                    ["rabin-buchi"] => Kind::RabinBuchi,
                    _ => return Err(perr(ln, format!("bad type `{}`", rest.join(" ")))),
                });
            }
            "events" => {
                if events.is_some() {
                    return Err(perr(ln, "duplicate `events` line"));
                }
                let mut evs = Vec::new();
                for t in rest {
                    let (label, flag) = t
                        .rsplit_once(':')
                        .ok_or_else(|| perr(ln, format!("event `{t}` lacks :c or :u")))?;
                    let controllable = match flag {
                        "c" => true,
                        "u" => false,
                        _ => return Err(perr(ln, format!("event `{t}` lacks :c or :u"))),
                    };
                    evs.push(Event::new(label, controllable));
                }
                events = Some((ln, evs));
            }
            "initial" => {
                if initial.is_some() {
                    return Err(perr(ln, "duplicate `initial` line"));
                }
                match rest.as_slice() {
                    [q] => initial = Some((ln, states.id(q))),
                    _ => return Err(perr(ln, "`initial` takes one state")),
                }
            }
            "trans" => match rest.as_slice() {
                [p, e, q] => {
                    let (p, q) = (states.id(p), states.id(q));
                    trans.push((ln, p, e.to_string(), q));
                }
                _ => return Err(perr(ln, "`trans` takes <state> <event> <state>")),
            },
            "buchi" => {
                if buchi.is_some() {
                    return Err(perr(ln, "duplicate `buchi` line"));
                }
                buchi = Some(rest.iter().map(|q| states.id(q)).collect());
            }
            "rabin" => {
                let parts: Vec<&str> = line["rabin".len()..].split(';').collect();
                let [r, i] = parts.as_slice() else {
                    return Err(perr(ln, "`rabin` takes `R <states> ; I <states>`"));
                };
                let r: Vec<&str> = r.split_whitespace().collect();
                let i: Vec<&str> = i.split_whitespace().collect();
                match (r.first(), i.first()) {
                    (Some(&"R"), Some(&"I")) => rabin.push(RabinPair {
                        r: r[1..].iter().map(|q| states.id(q)).collect(),
                        i: i[1..].iter().map(|q| states.id(q)).collect(),
                    }),
                    _ => return Err(perr(ln, "`rabin` takes `R <states> ; I <states>`")),
                }
            }
            other => return Err(perr(ln, format!("unknown key `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| perr(0, "missing `automaton` line"))?;
    let kind = kind.ok_or_else(|| perr(0, "missing `type` line"))?;
    let (ev_line, evs) = events.ok_or_else(|| perr(0, "missing `events` line"))?;
    let alphabet = Alphabet::new(evs).map_err(|e| perr(ev_line, e.to_string()))?;
    match kind {
        Kind::Star if buchi.is_some() => return Err(perr(0, "star automaton with `buchi` line")),
        Kind::Buchi | Kind::RabinBuchi if buchi.is_none() => {
            return Err(perr(0, "missing `buchi` line"))
        }
        _ => {}
    }
    if kind != Kind::RabinBuchi && !rabin.is_empty() {
        return Err(perr(0, "`rabin` line in a non rabin-buchi automaton"));
    }
    let n = states.index.len();
    if initial.is_none() && n > 0 {
        return Err(perr(0, "missing `initial` line"));
    }
    let mut a = Automaton::new(name, kind, alphabet, n);
    if let Some((_, q0)) = initial {
        a.set_initial(q0);
    }
    let names: Vec<String> = {
        let mut v = vec![String::new(); n];
        for (k, &id) in &states.index {
            v[id] = k.clone();
        }
        v
    };
    for (ln, p, e, q) in trans {
        let ev = a
            .alphabet()
            .index(&e)
            .ok_or_else(|| perr(ln, format!("unknown event `{e}`")))?;
        match a.next(p, ev) {
            Some(t) if t != q => {
                return Err(Error::Nondeterministic {
                    state: names[p].clone(),
                    event: e,
                })
            }
            _ => a.set(p, ev, q),
        }
    }
    a.buchi = buchi.unwrap_or_default();
    a.rabin = rabin;
    Ok(a)
}

pub fn to_text(a: &Automaton) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "automaton {}", a.name);
    let _ = writeln!(s, "type {}", a.kind.keyword());
    let evs: Vec<String> = a
        .alphabet()
        .events()
        .iter()
        .map(|e| format!("{}:{}", e.label, if e.controllable { "c" } else { "u" }))
        .collect();
    let _ = writeln!(s, "events {}", evs.join(" "));
    if let Some(q0) = a.initial() {
        let _ = writeln!(s, "initial {q0}");
    }
    for (p, e, q) in a.transitions() {
        let _ = writeln!(s, "trans {p} {} {q}", a.alphabet().label(e));
    }
    let join = |set: &StateSet| {
        set.iter()
            .map(|q| format!(" {q}"))
            .collect::<String>()
    };
    if a.kind != Kind::Star {
        let _ = writeln!(s, "buchi{}", join(&a.buchi));
    }
    if a.kind == Kind::RabinBuchi {
        for p in &a.rabin {
            let _ = writeln!(s, "rabin R{} ; I{}", join(&p.r), join(&p.i));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const F1: &str = "\
# every b1 is eventually followed by g1
automaton F1
type buchi
events a1:c b1:u g1:u
initial idle
trans idle b1 open
trans open g1 idle
trans idle a1 idle
trans open a1 open
buchi idle
";

    #[test]
    fn parse_named_states() {
        let a = parse(F1).unwrap();
        assert_eq!(a.num_states(), 2);
        assert_eq!(a.num_transitions(), 4);
        assert_eq!(a.buchi.len(), 1);
        assert_eq!(a.kind, Kind::Buchi);
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let a = parse(F1).unwrap();
        let t1 = to_text(&a);
        let t2 = to_text(&parse(&t1).unwrap());
        assert_eq!(t1, t2);
    }

    #[test]
    fn rabin_lines() {
        let text = "automaton R\ntype rabin-buchi\nevents a:c\ninitial 0\ntrans 0 a 1\ntrans 1 a 0\nbuchi 0 1\nrabin R 1 ; I 0 1\n";
        let a = parse(text).unwrap();
        assert_eq!(a.rabin.len(), 1);
        assert_eq!(to_text(&a), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "automaton x\ntype star\nevents a:c\ninitial 0\nfoo 1\n";
        assert_eq!(
            parse(bad).unwrap_err(),
            Error::Parse {
                line: 5,
                msg: "unknown key `foo`".into()
            }
        );
        let bad = "automaton x\ntype star\nevents a:c\ninitial 0\ntrans 0 b 0\n";
        assert!(matches!(parse(bad), Err(Error::Parse { line: 5, .. })));
        let bad = "automaton x\ntype buchi\nevents a:c\ninitial 0\n";
        assert!(parse(bad).is_err());
        let nd = "automaton x\ntype star\nevents a:c\ninitial 0\ntrans 0 a 0\ntrans 0 a 1\n";
        assert!(matches!(parse(nd), Err(Error::Nondeterministic { .. })));
    }
}
