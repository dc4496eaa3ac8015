use hcf_core::shift::{classify, Word};
use hcf_core::gaussian::{GaussianInt, Symmetry};

fn main() {
    let g = |re: i64, im: i64| GaussianInt::new(re, im);
    // trial 0 word from the acceptance rng path: reproduce a failing family
    let mut v = Vec::new();
    for b in [3i64, -3, 4, -4, 5, -5, 3, -3] {
        v.push(g(-2, 0));
        v.push(g(1, b));
    }
    let word = Word::new(v).unwrap();
    for mir in [Symmetry::MIR1, Symmetry::MIR2] {
        let mirrored = word.apply_symmetry(&mir);
        let c1 = classify(&word, 3).unwrap();
        let c2 = classify(&mirrored, 3).unwrap();
        println!("{mir:?}: {:?} vs {:?}", c1.tag, c2.tag);
    }
    // smaller case
    let w2 = Word::new(vec![g(-2,0), g(1,3)]).unwrap();
    for mir in [Symmetry::MIR1, Symmetry::MIR2] {
        let m = w2.apply_symmetry(&mir);
        println!("small {mir:?}: {:?} -> {:?} | {:?} -> {:?}",
            w2, classify(&w2, 3).unwrap().tag, m, classify(&m, 3).unwrap().tag);
    }
}
