// SPDX-License-Identifier: Apache-2.0

//! Runs every example's `run_example` so the examples stay correct.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        #[path = $file]
        mod $name;

        #[test]
        fn $name() {
            $name::run_example().expect("example runs");
        }
    };
}

example!(count_collective_states, "../examples/count_collective_states.rs");
example!(two_cavity_dressed_states, "../examples/two_cavity_dressed_states.rs");
example!(three_cavity_spectrum, "../examples/three_cavity_spectrum.rs");
example!(nutation_dynamics, "../examples/nutation_dynamics.rs");
example!(generator_consistency, "../examples/generator_consistency.rs");
example!(parameter_sweep, "../examples/parameter_sweep.rs");
