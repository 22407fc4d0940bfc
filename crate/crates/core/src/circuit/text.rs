//! Line-oriented circuit format.
//!
//! ```text
//! width 3
//! outputs 0 1
//! H 2
//! RY 0.5 1
//! CNOT 0 1
//! CTRL 2 {
//!   X 0
//! }
//! ADJ {
//!   RY 0.25 0
//! }
//! ```
//!
//! `U w a b c d e f g h` carries a 2x2 unitary as row-major (re, im) pairs.
//! Blank lines and `#` comments are skipped. Reals are written in Rust's
//! shortest round-trip form so emit and parse are exact inverses.

use num_complex::Complex64;

use super::{Circuit, CircuitError, Gate};

pub fn emit_circuit(circuit: &Circuit) -> String {
    let mut out = format!("width {}\noutputs", circuit.width());
    for o in circuit.outputs() {
        out.push_str(&format!(" {o}"));
    }
    out.push('\n');
    emit_gates(circuit.gates(), 0, &mut out);
    out
}

fn emit_gates(gates: &[Gate], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for g in gates {
        out.push_str(&pad);
        match g {
            Gate::H(w) => out.push_str(&format!("H {w}\n")),
            Gate::X(w) => out.push_str(&format!("X {w}\n")),
            Gate::Cnot { control, target } => out.push_str(&format!("CNOT {control} {target}\n")),
            Gate::Ry { theta, target } => out.push_str(&format!("RY {theta:?} {target}\n")),
            Gate::Unitary { matrix, target } => {
                out.push_str(&format!("U {target}"));
                for z in matrix.iter().flatten() {
                    out.push_str(&format!(" {:?} {:?}", z.re, z.im));
                }
                out.push('\n');
            }
            Gate::Controlled { control, body } => {
                out.push_str(&format!("CTRL {control} {{\n"));
                emit_gates(body, depth + 1, out);
                out.push_str(&pad);
                out.push_str("}\n");
            }
            Gate::Adjoint(body) => {
                out.push_str("ADJ {\n");
                emit_gates(body, depth + 1, out);
                out.push_str(&pad);
                out.push_str("}\n");
            }
        }
    }
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

fn strip(gates: Vec<(usize, Gate)>) -> Vec<Gate> {
    gates.into_iter().map(|(_, g)| g).collect()
}

fn err(line: usize, msg: impl Into<String>) -> CircuitError {
    CircuitError::Parse { line, msg: msg.into() }
}

fn wire(tok: &str, line: usize) -> Result<usize, CircuitError> {
    tok.parse().map_err(|_| err(line, format!("bad wire index `{tok}`")))
}

fn real(tok: &str, line: usize) -> Result<f64, CircuitError> {
    let v: f64 = tok.parse().map_err(|_| err(line, format!("bad number `{tok}`")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(err(line, format!("non-finite number `{tok}`")))
    }
}

fn arity(toks: &[&str], n: usize, line: usize) -> Result<(), CircuitError> {
    if toks.len() == n {
        Ok(())
    } else {
        Err(err(line, format!("`{}` takes {} operand(s)", toks[0], n - 1)))
    }
}

impl<'a> Lines<'a> {
    fn block(&mut self, nested: bool) -> Result<Vec<(usize, Gate)>, CircuitError> {
        let mut gates = Vec::new();
        while self.pos < self.items.len() {
            let (line, toks) = (self.items[self.pos].0, self.items[self.pos].1.clone());
            self.pos += 1;
            let gate = match toks[0] {
                "}" => {
                    arity(&toks, 1, line)?;
                    if nested {
                        return Ok(gates);
                    }
                    return Err(err(line, "unmatched `}`"));
                }
                "H" => {
                    arity(&toks, 2, line)?;
                    Gate::H(wire(toks[1], line)?)
                }
                "X" => {
                    arity(&toks, 2, line)?;
                    Gate::X(wire(toks[1], line)?)
                }
                "CNOT" => {
                    arity(&toks, 3, line)?;
                    Gate::Cnot { control: wire(toks[1], line)?, target: wire(toks[2], line)? }
                }
                "RY" => {
                    arity(&toks, 3, line)?;
                    Gate::Ry { theta: real(toks[1], line)?, target: wire(toks[2], line)? }
                }
                "U" => {
                    arity(&toks, 10, line)?;
                    let target = wire(toks[1], line)?;
                    let mut z = [Complex64::new(0.0, 0.0); 4];
                    for (k, zk) in z.iter_mut().enumerate() {
                        *zk = Complex64::new(real(toks[2 + 2 * k], line)?, real(toks[3 + 2 * k], line)?);
                    }
                    Gate::Unitary { matrix: [[z[0], z[1]], [z[2], z[3]]], target }
                }
                "CTRL" => {
                    if toks.len() != 3 || toks[2] != "{" {
                        return Err(err(line, "expected `CTRL <wire> {`"));
                    }
                    let control = wire(toks[1], line)?;
                    Gate::Controlled { control, body: strip(self.block(true)?) }
                }
                "ADJ" => {
                    if toks.len() != 2 || toks[1] != "{" {
                        return Err(err(line, "expected `ADJ {`"));
                    }
                    Gate::Adjoint(strip(self.block(true)?))
                }
                other => return Err(err(line, format!("unknown gate `{other}`"))),
            };
            gates.push((line, gate));
        }
        if nested {
            let last = self.items.last().map_or(0, |l| l.0);
            return Err(err(last, "unclosed block"));
        }
        Ok(gates)
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let items: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let mut it = items.iter();
    let (wl, wt) = it.next().ok_or_else(|| err(1, "empty circuit text"))?;
    if wt.len() != 2 || wt[0] != "width" {
        return Err(err(*wl, "expected `width <m>`"));
    }
    let width = wire(wt[1], *wl)?;
    let (ol, ot) = it.next().ok_or_else(|| err(*wl, "missing `outputs` line"))?;
    if ot[0] != "outputs" {
        return Err(err(*ol, "expected `outputs ...`"));
    }
    let outputs = ot[1..].iter().map(|t| wire(t, *ol)).collect::<Result<Vec<_>, _>>()?;
    let mut lines = Lines { items: items[2..].to_vec(), pos: 0 };
    let gates = lines.block(false)?;
    let mut circuit = Circuit::new(width, outputs).map_err(|e| err(*ol, e.to_string()))?;
    for (line, g) in gates {
        circuit.push(g).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(circuit)
}
