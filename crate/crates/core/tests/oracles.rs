use cover_census::finitegroups::{are_isomorphic, realize, FiniteGroup, GroupOptions};
use cover_census::fuchsian::Signature;
use cover_census::homology::{abelianization, divisor_sum, AbelianGroup};
use cover_census::lowindex::{count_subgroups, enumerate_subgroups, EnumerationOptions};
use cover_census::par::Parallelism;
use cover_census::presentations::{fuchsian_presentation, Presentation};

fn perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| (0..=p.len()).map(move |i| {
                let mut q = p.clone();
                q.insert(i, k);
                q
            }))
            .collect();
    }
    out
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

fn orbit_is_everything(gens: &[&Vec<usize>], n: usize) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for g in gens {
            if !seen[g[x]] {
                seen[g[x]] = true;
                stack.push(g[x]);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Index-n subgroups of Z/2 * Z/3 from transitive pairs (a, b) with
/// a^2 = b^3 = 1.
fn brute_modular(n: usize) -> usize {
    let all = perms(n);
    let twos: Vec<&Vec<usize>> = all.iter().filter(|p| is_identity(&compose(p, p))).collect();
    let threes: Vec<&Vec<usize>> = all.iter().filter(|p| is_identity(&compose(&compose(p, p), p))).collect();
    let mut t = 0;
    for a in &twos {
        for b in &threes {
            if orbit_is_everything(&[a, b], n) {
                t += 1;
            }
        }
    }
    t / factorial(n - 1)
}

#[test]
fn modular_group_matches_brute_force() {
    let p = fuchsian_presentation(&Signature::modular());
    for n in 1..=6 {
        assert_eq!(count_subgroups(&p, n).unwrap(), brute_modular(n), "n={n}");
    }
}

#[test]
fn z2_counts_are_divisor_sums() {
    let z2 = Presentation::free_abelian(2);
    for n in 1..=12 {
        assert_eq!(count_subgroups(&z2, n).unwrap() as u64, divisor_sum(n as u64));
    }
}

#[test]
fn z3_index_counts() {
    // Subgroups of index n in Z^3: sum over d1 d2 d3 = n of d2 d3^2.
    let z3 = Presentation::free_abelian(3);
    for n in 1..=6u64 {
        let mut expected = 0;
        for d1 in 1..=n {
            for d2 in 1..=n {
                if n % (d1 * d2) == 0 {
                    let d3 = n / (d1 * d2);
                    expected += d2 * d3 * d3;
                }
            }
        }
        assert_eq!(count_subgroups(&z3, n as usize).unwrap() as u64, expected, "n={n}");
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let seq = EnumerationOptions { parallelism: Parallelism::Sequential, ..Default::default() };
    let par = EnumerationOptions { parallelism: Parallelism::Parallel, ..Default::default() };
    let p = fuchsian_presentation(&Signature::parse("0,0;2,3,7").unwrap());
    for n in [7, 8, 9] {
        let a = cover_census::lowindex::enumerate_subgroups_with(&p, n, seq).unwrap();
        let b = cover_census::lowindex::enumerate_subgroups_with(&p, n, par).unwrap();
        assert_eq!(a, b, "n={n}");
    }
}

#[test]
fn every_table_is_a_valid_action() {
    let p = Presentation::parse(&["x", "y"], &["x^2", "y^3", "(xy)^4"]).unwrap();
    for n in 1..=8 {
        for t in enumerate_subgroups(&p, n).unwrap() {
            assert!(t.satisfies(&p) && t.is_transitive() && t.is_canonical());
        }
    }
}

/// Isomorphism by search over all identity-fixing, order-preserving
/// bijections, pruned by the partial homomorphism property.
fn brute_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    fn extend(a: &FiniteGroup, b: &FiniteGroup, map: &mut Vec<Option<u32>>, used: &mut Vec<bool>, i: usize) -> bool {
        let n = a.order();
        if i == n {
            return true;
        }
        let x = i as u32;
        if map[i].is_some() {
            return extend(a, b, map, used, i + 1);
        }
        for y in 0..n as u32 {
            if used[y as usize] || a.element_order(x) != b.element_order(y) {
                continue;
            }
            map[i] = Some(y);
            let ok = (0..n as u32).all(|z| match map[z as usize] {
                None => true,
                Some(fz) => {
                    let p1 = map[a.mul(x, z) as usize].is_none_or(|v| v == b.mul(y, fz));
                    let p2 = map[a.mul(z, x) as usize].is_none_or(|v| v == b.mul(fz, y));
                    p1 && p2
                }
            });
            if ok {
                used[y as usize] = true;
                if extend(a, b, map, used, i + 1) {
                    return true;
                }
                used[y as usize] = false;
            }
            map[i] = None;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    map[a.identity() as usize] = Some(b.identity());
    used[b.identity() as usize] = true;
    extend(a, b, &mut map, &mut used, 0)
}

fn small_groups() -> Vec<(String, FiniteGroup)> {
    let opts = GroupOptions::default();
    let p = |gens: &[&str], rels: &[&str]| realize(&Presentation::parse(gens, rels).unwrap(), opts).unwrap();
    let mut out: Vec<(String, FiniteGroup)> = (1..=12).map(|n| (format!("Z/{n}"), FiniteGroup::cyclic(n).unwrap())).collect();
    out.push(("Z2xZ2".into(), p(&["x", "y"], &["x^2", "y^2", "[x,y]"])));
    out.push(("Z2xZ4".into(), p(&["x", "y"], &["x^2", "y^4", "[x,y]"])));
    out.push(("Z2^3".into(), p(&["x", "y", "z"], &["x^2", "y^2", "z^2", "[x,y]", "[x,z]", "[y,z]"])));
    out.push(("Z2xZ6".into(), p(&["x", "y"], &["x^2", "y^6", "[x,y]"])));
    out.push(("Z3xZ3".into(), p(&["x", "y"], &["x^3", "y^3", "[x,y]"])));
    for n in 3..=6 {
        out.push((format!("D{}", 2 * n), p(&["x", "y"], &["x^2", &format!("y^{n}"), "(xy)^2"])));
    }
    out.push(("Q8".into(), p(&["x", "y"], &["x^4", "x^2 y^-2", "y^-1 x y x"])));
    out.push(("Dic12".into(), p(&["x", "y"], &["y^3", "x^4", "x^-1 y x y"])));
    out.push(("A4".into(), p(&["x", "y"], &["x^2", "y^3", "(xy)^3"])));
    out
}

#[test]
fn isomorphism_agrees_with_brute_force() {
    let groups = small_groups();
    for (i, (na, a)) in groups.iter().enumerate() {
        for (nb, b) in &groups[i..] {
            if a.order() == b.order() {
                assert_eq!(are_isomorphic(a, b), brute_isomorphic(a, b), "{na} vs {nb}");
            }
        }
    }
    let by_name = |s: &str| &groups.iter().find(|(n, _)| n == s).unwrap().1;
    assert!(!are_isomorphic(by_name("D8"), by_name("Q8")));
    assert!(!are_isomorphic(by_name("D12"), by_name("A4")));
    assert!(!are_isomorphic(by_name("Dic12"), by_name("D12")));
    assert!(are_isomorphic(by_name("Z2xZ6"), &FiniteGroup::direct_product(by_name("Z/2"), by_name("Z/6"))));
}

#[test]
fn abelianization_of_realized_groups() {
    for (name, g) in small_groups() {
        if g.is_abelian() {
            let ab = g.abelianization();
            let order: u64 = ab.torsion.iter().product();
            assert_eq!(order as usize, g.order(), "{name}");
        }
    }
    let a4 = Presentation::parse(&["x", "y"], &["x^2", "y^3", "(xy)^3"]).unwrap();
    assert_eq!(abelianization(&a4).unwrap(), AbelianGroup::from_cyclic_orders(&[3]));
}
