//! State specifications for the swap-test command.
//!
//! `zero:N`, `plus:N`, `maxmixed:N` or `circuit:PATH`, each naming the
//! reduced state on a circuit's output wires.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

use qentropy::circuit::{parse_circuit, reduced_state, Circuit, DensityMatrix, Gate, StateVector};

/// Largest register accepted by the built-in specs.
const MAX_SPEC_QUBITS: usize = 6;

pub fn spec_circuit(spec: &str) -> Result<Circuit> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| anyhow!("state `{spec}`: expected KIND:ARG"))?;
    if kind == "circuit" {
        let text = std::fs::read_to_string(Path::new(arg)).with_context(|| format!("reading {arg}"))?;
        return parse_circuit(&text).with_context(|| format!("parsing {arg}"));
    }
    let n: usize = arg.parse().map_err(|_| anyhow!("state `{spec}`: `{arg}` is not a qubit count"))?;
    if n == 0 || n > MAX_SPEC_QUBITS {
        bail!("state `{spec}`: qubit count must be in 1..={MAX_SPEC_QUBITS}");
    }
    Ok(match kind {
        "zero" => Circuit::all_outputs(n),
        "plus" => {
            let mut c = Circuit::all_outputs(n);
            c.extend((0..n).map(Gate::H))?;
            c
        }
        "maxmixed" => {
            // n Bell pairs, keeping one half of each
            let mut c = Circuit::new(2 * n, (0..n).collect())?;
            for w in 0..n {
                c.push(Gate::H(w))?;
                c.push(Gate::Cnot { control: w, target: w + n })?;
            }
            c
        }
        _ => bail!("state `{spec}`: unknown kind `{kind}` (zero, plus, maxmixed, circuit)"),
    })
}

pub fn spec_state(spec: &str) -> Result<DensityMatrix> {
    let c = spec_circuit(spec)?;
    Ok(reduced_state(&c, &StateVector::zero(c.width()))?)
}
