//! Writes the sample structure files used in the README walk-through:
//! two base structures, the order-2 grading group, the two actions, the
//! certified crossed families they generate, and one validated module.
//!
//! Usage: cargo run -p cograded-cli --example gen_fixtures -- <dir>

use std::fs;
use std::path::Path;

use cograded::crossed::{build_hg, GroupAction};
use cograded::exactlin::{rat, Mat};
use cograded::group::FiniteGroup;
use cograded::io;
use cograded::whq::{group_algebra, groupoid_algebra};
use cograded::yd::yd_adjoint;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures".to_string());
    let dir = Path::new(&dir);
    fs::create_dir_all(dir).expect("create fixture directory");

    let z2 = FiniteGroup::cyclic(2).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();

    let base_kz3 = group_algebra(&z3);
    let base_groupoid = groupoid_algebra(&[FiniteGroup::cyclic(1).unwrap(), FiniteGroup::cyclic(1).unwrap()]).unwrap();

    let mut inversion = Mat::zeros(3, 3);
    *inversion.at_mut(0, 0) = rat(1);
    *inversion.at_mut(2, 1) = rat(1);
    *inversion.at_mut(1, 2) = rat(1);
    let swap = Mat::from_int_rows(&[&[0, 1], &[1, 0]]);

    let action_inv = GroupAction { mats: vec![Mat::identity(3), inversion] };
    let action_swap = GroupAction { mats: vec![Mat::identity(2), swap] };

    let hg_kz3 = build_hg(&base_kz3, &z2, &action_inv).expect("certifies");
    let hg_groupoid = build_hg(&base_groupoid, &z2, &action_swap).expect("certifies");
    let adj = yd_adjoint(&hg_kz3, 1).expect("validates");

    let write = |name: &str, contents: String| {
        fs::write(dir.join(name), contents).expect("write fixture");
        println!("wrote {}", dir.join(name).display());
    };

    write("group-z2.json", io::group_to_json(&z2));
    write("base-kz3.json", io::whq_to_json(&base_kz3));
    write("base-groupoid2.json", io::whq_to_json(&base_groupoid));
    write("action-inversion.json", io::action_to_json(&z2, &action_inv.mats));
    write("action-swap.json", io::action_to_json(&z2, &action_swap.mats));
    write("hg-kz3.json", io::crossed_to_json(&hg_kz3));
    write("hg-groupoid2.json", io::crossed_to_json(&hg_groupoid));
    write("adjoint-s.json", io::yd_to_json(&hg_kz3, &adj, "hg-kz3.json"));
}
