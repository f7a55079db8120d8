//! Terminal games. The human answers with `B`/`R` as Painter, or with two
//! vertex ids (`new` for a fresh vertex) as Builder. `q` quits.

use std::io::{BufRead, Write};
use std::path::Path;

use ramsey_core::graph::{bits, Color, ColoredGraph};
use ramsey_service::{Action, CreateRequest, Opponent, Role, Session, SessionError, VertexChoice};

use crate::{status_word, Outcome};

/// Adjacency listing, one line per vertex: `3: 0R 4B`.
pub fn render(board: &ColoredGraph) -> String {
    let mut out = String::new();
    for v in 0..board.vertex_count() {
        out.push_str(&format!("  {v}:"));
        let red = board.neighbors(v, Color::Red);
        for w in bits(board.all_neighbors(v)) {
            let c = if red >> w & 1 == 1 { 'R' } else { 'B' };
            out.push_str(&format!(" {w}{c}"));
        }
        out.push('\n');
    }
    out
}

fn parse_vertex(tok: &str) -> Option<VertexChoice> {
    if tok.eq_ignore_ascii_case("new") || tok == "n" {
        Some(VertexChoice::New)
    } else {
        tok.parse().ok().map(VertexChoice::Id)
    }
}

fn parse_action(line: &str, builder: bool) -> Option<Action> {
    let toks: Vec<&str> = line
        .split(|c: char| c.is_whitespace() || c == ',' || c == '-')
        .filter(|t| !t.is_empty())
        .collect();
    if builder {
        match toks.as_slice() {
            [u, v] => Some(Action::Edge {
                u: parse_vertex(u)?,
                v: parse_vertex(v)?,
            }),
            _ => None,
        }
    } else {
        match toks.as_slice() {
            [c] if c.eq_ignore_ascii_case("b") => Some(Action::Color { color: Color::Blue }),
            [c] if c.eq_ignore_ascii_case("r") => Some(Action::Color { color: Color::Red }),
            _ => None,
        }
    }
}

pub fn run(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    l: usize,
    builder: bool,
    opponent: Option<&str>,
    save: Option<&Path>,
) -> Result<Outcome, String> {
    let opponent: Opponent = match (builder, opponent) {
        (_, Some(o)) => o.parse()?,
        (true, None) => Opponent::Blocking,
        (false, None) => Opponent::Constructive,
    };
    let role = if builder {
        Role::Builder
    } else {
        Role::Painter
    };
    let req = CreateRequest { l, role, opponent };
    let mut session =
        Session::new("terminal".into(), &req, usize::MAX).map_err(|e| e.to_string())?;
    let io = |e: std::io::Error| e.to_string();

    writeln!(
        out,
        "red star with 3 edges vs blue path on {l} vertices; {} rounds",
        session.budget()
    )
    .map_err(io)?;
    let mut line = String::new();
    while !session.is_closed() {
        let d = session.descriptor();
        writeln!(out, "\nround {} of {}", d.rounds + 1, d.budget).map_err(io)?;
        write!(out, "{}", render(session.state().board())).map_err(io)?;
        match d.proposal {
            Some(p) => write!(out, "edge {}-{}, color [B/R]: ", p.u, p.v).map_err(io)?,
            None => write!(out, "edge (ids, or new): ").map_err(io)?,
        }
        out.flush().map_err(io)?;

        line.clear();
        if input.read_line(&mut line).map_err(io)? == 0 {
            return Err("input ended before the game did".into());
        }
        let text = line.trim();
        if text.eq_ignore_ascii_case("q") {
            writeln!(out, "quit").map_err(io)?;
            return Ok(Outcome::Ok);
        }
        let Some(action) = parse_action(text, builder) else {
            writeln!(out, "could not read {text:?}").map_err(io)?;
            continue;
        };
        match session.submit(&action) {
            Ok(d) => {
                if let Some(m) = d.moves.last() {
                    writeln!(out, "{}-{} is {}", m.u, m.v, m.color).map_err(io)?;
                }
            }
            Err(SessionError::IllegalEdge(why)) => writeln!(out, "illegal: {why}").map_err(io)?,
            Err(e) => return Err(e.to_string()),
        }
    }

    let t = session.transcript();
    writeln!(out, "\nfinal board:").map_err(io)?;
    write!(out, "{}", render(session.state().board())).map_err(io)?;
    writeln!(out, "{} after {} rounds", status_word(t.status), t.rounds).map_err(io)?;
    if let Some(path) = save {
        std::fs::write(path, t.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(Outcome::Ok)
}
