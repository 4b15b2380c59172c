//! The Klein bottle subgroup generated by `str` and `t^k s r^-k s^-1`.
//!
//! Run with `cargo run --release --example klein_bottle`.

use artin_flats::prover::{replay, Budget};
use artin_flats::subgroups::klein_pair;

fn main() {
    let budget = Budget { max_len: 40, max_states: 300_000 };
    for k in [1, 2, -3] {
        let pair = klein_pair(k, budget).unwrap();
        let p = &pair.relation.presentation;
        let sq = pair.squared_relation().unwrap();
        let dec = pair.decomposition(budget).unwrap();
        assert!(replay(&pair.relation) && replay(&sq) && replay(&dec));
        println!(
            "k={k}: a={} b={}  a^-1 b a = b^-1 ({} moves), a^-2 b a^2 = b ({} moves)",
            p.format_word(&pair.a),
            p.format_word(&pair.b),
            pair.relation.moves.len(),
            sq.moves.len()
        );
    }
}
