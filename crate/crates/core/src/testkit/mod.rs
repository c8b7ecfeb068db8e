//! Seeded generators and independent oracles used by the test suites.

mod gen;
mod oracles;
pub mod suites;

pub use gen::{
    gen_center, gen_curve, gen_param, gen_point, gen_poly, gen_poly_with, gen_pos_rat, gen_qmv,
    gen_qmv_pair, gen_qmv_with, gen_tree, gen_unit_pair, rng, shard_seed, Seed, DEFAULT_SEED,
};
pub use oracles::{
    brute_meet_oracle, divisorial_truncations, euclid_multiplicity_oracle, sampling_leq_oracle,
    structural_witnesses, value_table, witness_pool, LeqVerdict,
};
