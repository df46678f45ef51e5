use etmap::classes::{classify, EtClass};
use etmap::realize::*;

fn check(f: GroupFamily, t: EtClass, even: bool) {
    let v = if even { realize_table3(f, t) } else { realize_table1(f, t) }.unwrap();
    let member = if even { table3_member(f, t) } else { table1_member(f, t) };
    assert_eq!(v.is_realizable(), member, "{f:?} {t}");
    if let Verdict::Realizable(r) = v {
        let m = r.build().unwrap();
        assert_eq!(classify(&m), Some(t), "{f:?} {t} via {}", r.method);
        assert_eq!(r.expected_class().unwrap(), t, "{f:?} {t}");
        let res = r.resolve().unwrap();
        assert_eq!(res.table.order() as u64, f.order(), "{f:?} {t}");
        if even {
            assert!(m.summary().orientable_no_boundary, "{f:?} {t} via {}", r.method);
        }
    }
}

#[test]
fn all_classes_small_degree() {
    for n in 2..=6 {
        for t in EtClass::ALL {
            check(GroupFamily::Sym { n }, t, false);
            check(GroupFamily::Alt { n }, t, false);
        }
    }
}

#[test]
fn even_small_degree() {
    for n in 2..=6 {
        for t in EtClass::ALL {
            check(GroupFamily::Sym { n }, t, true);
            check(GroupFamily::Alt { n }, t, true);
        }
    }
}

#[test]
fn linear_groups_small_q() {
    for q in [5u32, 7, 8, 9] {
        for t in EtClass::ALL {
            check(GroupFamily::Psl2 { q }, t, false);
        }
    }
}

// past the exhaustive range: constructions only
#[test]
fn s9_positive_cells() {
    let f = GroupFamily::Sym { n: 9 };
    for t in EtClass::ALL {
        if table1_member(f, t) {
            check(f, t, false);
        }
        if table3_member(f, t) {
            check(f, t, true);
        }
    }
}
