//! Seeded random machines for property tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sfst::{Sfst, StateId, StateLabel};
use crate::symbols::{Alphabet, Str, Symbol};

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub states: usize,
    pub input: usize,
    pub output: usize,
    /// Longest output on a transition or final output.
    pub max_output: usize,
    /// Keep the start state's final output empty.
    pub silent_start: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { states: 3, input: 2, output: 2, max_output: 2, silent_start: true }
    }
}

fn alphabet(prefix: char, n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|i| Symbol::new(&format!("{}", (prefix as u8 + i as u8) as char)).unwrap()))
}

/// Input symbols are `a, b, ...`; output symbols are `x, y, ...`.
pub fn random_sfst(params: &RandomParams, seed: u64) -> Sfst {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let input = alphabet('a', params.input);
    let output = alphabet('x', params.output);
    let word = |rng: &mut ChaCha8Rng| -> Str {
        let len = rng.gen_range(0..=params.max_output);
        (0..len).map(|_| output.symbols()[rng.gen_range(0..output.len())].clone()).collect()
    };
    let delta = (0..params.states)
        .map(|_| (0..input.len()).map(|_| (StateId(rng.gen_range(0..params.states)), word(&mut rng))).collect())
        .collect();
    let finals = (0..params.states)
        .map(|q| if q == 0 && params.silent_start { Str::lambda() } else { word(&mut rng) })
        .collect();
    let labels = (0..params.states).map(|q| StateLabel::Opaque(format!("s{q}"))).collect();
    Sfst::new(input, output.clone(), labels, StateId(0), delta, finals).expect("random tables are total")
}
