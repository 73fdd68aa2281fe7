use caution::domain::{
    builtin_domain, builtin_source, load_domain, serialize_domain, validate_domain, DomainError,
    BUILTIN_NAMES,
};

#[test]
fn serialization_is_a_fixpoint() {
    for name in BUILTIN_NAMES {
        let m = builtin_domain(name).unwrap();
        let text = serialize_domain(&m);
        let back = load_domain(&text).unwrap();
        assert_eq!(back, m, "{name}");
        assert_eq!(serialize_domain(&back), text, "{name}");
    }
}

#[test]
fn builtins_validate_cleanly() {
    for name in BUILTIN_NAMES {
        assert!(validate_domain(&builtin_domain(name).unwrap()).is_empty(), "{name}");
    }
}

#[test]
fn builtin_sources_load() {
    for name in BUILTIN_NAMES {
        let m = load_domain(builtin_source(name).unwrap()).unwrap();
        assert_eq!(m.name, name);
    }
    assert!(matches!(builtin_domain("kettle"), Err(DomainError::UnknownDomain(_))));
}

#[test]
fn toaster_goal_and_initial_state() {
    let m = builtin_domain("toaster").unwrap();
    let goal: Vec<String> = m.goal.iter().map(|f| f.to_string()).collect();
    assert_eq!(goal, ["toasted(bread_slice)", "removed(bread_slice,_)"]);
    let init: Vec<String> = m.initial_fluents.iter().map(|f| f.to_string()).collect();
    assert_eq!(
        init,
        [
            "temperature(bread_slice,20)",
            "temperature(bread_slot,20)",
            "exposed(bread_slot)",
            "exposed(bread_slice)"
        ]
    );
    assert_eq!(builtin_domain("breadmaker").unwrap().touch_guard_temp, 70);
}

#[test]
fn syntax_errors_carry_positions() {
    match load_domain("(domain x)\n(static fits a b") {
        Err(DomainError::Syntax(e)) => assert_eq!(e.pos.line, 2),
        other => panic!("expected a syntax error, got {other:?}"),
    }
}
