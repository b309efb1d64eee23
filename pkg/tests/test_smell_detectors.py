import itertools
import textwrap

from logdup.duplicate_index import build_duplicate_sets
from logdup.log_extraction import (
    NONE,
    catch_blocks_passing_exception,
    extract_logging_statements,
)
from logdup.smell_detectors import (
    IE1,
    IE2,
    IE3,
    detect_dp,
    detect_ic,
    detect_ie,
    detect_il,
    detect_lm,
    log_word_set,
    name_word_set,
)
from logdup.source_model import build_inheritance_graph, parse_source_unit
from logdup.textwords import split_and_stem


def scan_units(*sources):
    units = [parse_source_unit(f"F{i}.java", textwrap.dedent(src)) for i, src in enumerate(sources)]
    statements = []
    escapes = set()
    for u in units:
        statements.extend(extract_logging_statements(u))
        escapes |= catch_blocks_passing_exception(u)
    by_id = {s.id: s for s in statements}
    dup_sets = build_duplicate_sets(statements)
    blocks = {b.id: b for u in units for b in u.blocks}
    graph = build_inheritance_graph(units)
    return units, statements, by_id, dup_sets, blocks, graph, escapes


# ---------------------------------------------------------------------- IC


IC_POSITIVE = """
    package p;
    class Worker {
        void process() {
            try {
                step();
            } catch (TooManyParamsException e) {
                s_logger.warn("failed to decode request parameter");
            } catch (MissingParamException e) {
                s_logger.warn("failed to decode request parameter");
            }
        }
    }
"""


def test_ic_two_catches_identical_message_nothing_logged():
    _, _, by_id, dup_sets, blocks, _, _ = scan_units(IC_POSITIVE)
    (inst,) = detect_ic(dup_sets, by_id, blocks)
    assert inst.pattern == "IC"
    assert len(inst.members) == 2
    caught = inst.evidence["caught_types"]
    assert sorted(v[0] for v in caught.values()) == [
        "MissingParamException",
        "TooManyParamsException",
    ]


def test_no_ic_when_one_catch_logs_exception():
    src = IC_POSITIVE.replace('"failed to decode request parameter");\n            } catch (Missing',
                              '"failed to decode request parameter", e);\n            } catch (Missing')
    _, _, by_id, dup_sets, blocks, _, _ = scan_units(src)
    assert detect_ic(dup_sets, by_id, blocks) == []


def ic_pair_oracle(statements, by_id, blocks):
    """Brute-force scan over all pairs of catch-resident statements."""
    pairs = set()
    for a, b in itertools.combinations(statements, 2):
        if a.static_text != b.static_text or not a.static_text:
            continue
        if a.catch_block is None or b.catch_block is None or a.catch_block == b.catch_block:
            continue
        ta = blocks[a.catch_block].parent_block
        tb = blocks[b.catch_block].parent_block
        if ta != tb or ta is None:
            continue
        if a.exception_usage != NONE or b.exception_usage != NONE:
            continue
        ca = set(blocks[a.catch_block].caught_exception_types)
        cb = set(blocks[b.catch_block].caught_exception_types)
        if ca & cb:
            continue
        pairs.add(frozenset({a.id, b.id}))
    return pairs


THREE_CATCH = """
    package p;
    class Worker {
        void process() {
            try {
                step();
            } catch (AlphaException e) {
                log.error("replica sync stalled on follower");
            } catch (BetaException e) {
                log.error("replica sync stalled on follower");
            } catch (GammaException e) {
                log.error("leader election interrupted midway");
            }
        }
    }
"""


def test_ic_three_catches_two_duplicated_matches_pair_oracle():
    _, statements, by_id, dup_sets, blocks, _, _ = scan_units(THREE_CATCH)
    got = detect_ic(dup_sets, by_id, blocks)
    assert len(got) == 1
    oracle_pairs = ic_pair_oracle(statements, by_id, blocks)
    assert oracle_pairs == {frozenset(got[0].members)}


def test_ic_multi_catch_single_statement_excluded():
    src = """
    package p;
    class Worker {
        void process() {
            try { step(); } catch (AlphaException | BetaException e) {
                log.warn("combined failure handled in one block");
            }
        }
    }
    """
    _, _, by_id, dup_sets, blocks, _, _ = scan_units(src)
    assert detect_ic(dup_sets, by_id, blocks) == []


def test_ic_never_overlaps_ie():
    # IC requires all usages none; IE requires >= 2 distinct usages
    _, _, by_id, dup_sets, blocks, _, escapes = scan_units(IC_POSITIVE)
    ic_sets = {i.set_id for i in detect_ic(dup_sets, by_id, blocks)}
    ie_sets = {i.set_id for i in detect_ie(dup_sets, by_id, escapes)}
    assert not (ic_sets & ie_sets)


# ---------------------------------------------------------------------- IE


def ie_fixture(usage_a, usage_b, type_a="RuleConflictException", type_b="RuleConflictException",
               level_a="warn", level_b="warn"):
    def stmt(usage, level):
        if usage == "full":
            return f'log.{level}("failed to apply network rule " + ex.getMessage(), ex);'
        if usage == "message":
            return f'log.{level}("failed to apply network rule " + ex.getMessage());'
        return f'log.{level}("failed to apply network rule " + ruleId);'

    a = f"""
    package p;
    class A {{
        void create(long ruleId) {{
            try {{ commit(); }} catch ({type_a} ex) {{
                {stmt(usage_a, level_a)}
            }}
        }}
    }}
    """
    b = f"""
    package p;
    class B {{
        void create(long ruleId) {{
            try {{ commit(); }} catch ({type_b} ex) {{
                {stmt(usage_b, level_b)}
            }}
        }}
    }}
    """
    return scan_units(a, b)


def test_ie_stack_trace_vs_message_single_instance():
    _, _, by_id, dup_sets, _, _, escapes = ie_fixture("full", "message")
    (inst,) = detect_ie(dup_sets, by_id, escapes)
    assert inst.suppressed_by is None
    assert sorted(inst.evidence["usage"].values()) == ["full_stack_trace", "message_only"]


def test_ie_same_usage_no_instance():
    _, _, by_id, dup_sets, _, _, escapes = ie_fixture("full", "full")
    assert detect_ie(dup_sets, by_id, escapes) == []


def test_ie_different_specific_types_not_compared():
    _, _, by_id, dup_sets, _, _, escapes = ie_fixture(
        "full", "message", type_a="AlphaException", type_b="BetaException"
    )
    assert detect_ie(dup_sets, by_id, escapes) == []


def test_ie1_generic_vs_specific_suppressed():
    _, _, by_id, dup_sets, _, _, escapes = ie_fixture(
        "full", "message", type_a="Exception", type_b="CloudRuntimeException"
    )
    (inst,) = detect_ie(dup_sets, by_id, escapes)
    assert inst.suppressed_by == IE1


def test_ie2_same_catch_debug_suppressed():
    src = """
    package p;
    class A {
        void f() {
            try { g(); } catch (SyncFailedException e) {
                log.error("state synchronization aborted");
                log.debug("state synchronization aborted", e);
            }
        }
    }
    """
    _, _, by_id, dup_sets, _, _, escapes = scan_units(src)
    (inst,) = detect_ie(dup_sets, by_id, escapes)
    assert inst.suppressed_by == IE2


def test_ie2_not_applied_when_richer_usage_at_error():
    src = """
    package p;
    class A {
        void f() {
            try { g(); } catch (SyncFailedException e) {
                log.debug("state synchronization aborted");
                log.error("state synchronization aborted", e);
            }
        }
    }
    """
    _, _, by_id, dup_sets, _, _, escapes = scan_units(src)
    (inst,) = detect_ie(dup_sets, by_id, escapes)
    assert inst.suppressed_by is None


def test_ie3_exception_passed_to_error_handler_suppressed():
    a = """
    package p;
    class A {
        Answer f(Command cmd) {
            try { return g(); } catch (StorageCommandException e) {
                s_logger.debug("failed to create volume " + e.toString());
                return new CreateFailureAnswer(cmd, e);
            }
        }
    }
    """
    b = """
    package p;
    class B {
        Answer f(Command cmd) {
            try { return g(); } catch (StorageCommandException e) {
                s_logger.debug("failed to create volume " + e.getMessage(), e);
                return h(e);
            }
        }
    }
    """
    _, _, by_id, dup_sets, _, _, escapes = scan_units(a, b)
    (inst,) = detect_ie(dup_sets, by_id, escapes)
    assert inst.suppressed_by == IE3


def test_suppressed_instances_keep_filter_verdicts():
    _, _, by_id, dup_sets, _, _, escapes = ie_fixture(
        "full", "message", type_a="Exception", type_b="CloudRuntimeException"
    )
    (inst,) = detect_ie(dup_sets, by_id, escapes)
    assert inst.evidence["filters"][IE1] is True


# ---------------------------------------------------------------------- LM


LM_SCALE = """
    package p;
    class VmGrowthWorker {
        void doScaleUp(Group g) {
            LOG.info("initiating scaling up for target group");
        }
        void doScaleDown(Group g) {
            LOG.info("initiating scaling up for target group");
        }
    }
"""


def lm_count_oracle(statements, stop_words):
    """Independent set-intersection recomputation."""
    out = {}
    for s in statements:
        names = set(split_and_stem(s.enclosing_type.rsplit(".", 1)[-1])) | set(
            split_and_stem(s.enclosing_method)
        )
        msg = set(split_and_stem(s.static_text.replace("⟨V⟩", " "))) - stop_words
        out[s.id] = len(names & msg)
    return out


def test_lm_worked_example_scale_up_down():
    _, statements, by_id, dup_sets, _, _, _ = scan_units(LM_SCALE)
    (inst,) = detect_lm(dup_sets, by_id, stop_words=set())
    words = {by_id[sid].enclosing_method: set(ws) for sid, ws in inst.evidence["common_words"].items()}
    assert words["doScaleUp"] == {"scale", "up"}
    assert words["doScaleDown"] == {"scale"}
    assert lm_count_oracle(statements, set()) == {
        s: c for s, c in inst.evidence["common_word_counts"].items()
    }


def test_lm_equal_counts_not_flagged():
    src = LM_SCALE.replace("doScaleDown", "doScaleUpAgain")
    # both methods share {scale, up}; counts equal -> no instance
    _, _, by_id, dup_sets, _, _, _ = scan_units(src)
    assert detect_lm(dup_sets, by_id, stop_words=set()) == []


def test_lm_all_zero_counts_never_flagged():
    src = """
    package p;
    class Alpha {
        void first() { LOG.info("completely unrelated words here"); }
    }
    class Beta {
        void second() { LOG.info("completely unrelated words here"); }
    }
    """
    _, _, by_id, dup_sets, _, _, _ = scan_units(src)
    assert detect_lm(dup_sets, by_id, stop_words=set()) == []


def test_lm_three_members_counts_2_2_1_matches_oracle():
    src = """
    package p;
    class CacheJanitor {
        void sweepCacheShard() { LOG.info("sweep of cache shard finished"); }
        void sweepCacheRegion() { LOG.info("sweep of cache shard finished"); }
        void purgeOldest() { LOG.info("sweep of cache shard finished"); }
    }
    """
    _, statements, by_id, dup_sets, _, _, _ = scan_units(src)
    (inst,) = detect_lm(dup_sets, by_id, stop_words=set())
    counts = inst.evidence["common_word_counts"]
    oracle = lm_count_oracle(statements, set())
    assert counts == oracle
    # sweepCacheShard {sweep,cach,shard}=3, sweepCacheRegion {sweep,cach}=2,
    # purgeOldest {cach}=1: inconsistent counts -> flagged
    assert sorted(counts.values()) == [1, 2, 3]


def test_lm_permutation_invariant_and_stopword_stable():
    _, statements, by_id, dup_sets, _, _, _ = scan_units(LM_SCALE)
    (base,) = detect_lm(dup_sets, by_id, stop_words=set())
    reversed_sets = [
        type(d)(id=d.id, key=d.key, members=tuple(reversed(d.members)), span_types=d.span_types)
        for d in dup_sets
    ]
    (perm,) = detect_lm(reversed_sets, by_id, stop_words=set())
    assert set(perm.members) == set(base.members)
    assert perm.evidence["common_word_counts"] == base.evidence["common_word_counts"]
    # adding a stop word that appears in no name set changes nothing
    (with_stop,) = detect_lm(dup_sets, by_id, stop_words={"initi", "target"})
    assert with_stop.evidence["common_word_counts"] == base.evidence["common_word_counts"]


def test_lm_skips_members_with_empty_name_set():
    s = name_word_set
    # synthetic initializer members have bracketed names that still split;
    # a member with no letters at all yields an empty set and is skipped
    _, statements, by_id, dup_sets, _, _, _ = scan_units(LM_SCALE)
    stmt = statements[0]
    assert s(stmt) == {"vm", "growth", "worker", "do", "scale", "up"}
    assert log_word_set(stmt, {"scale"}) == {"initi", "up", "for", "target", "group"}


# ---------------------------------------------------------------------- DP


DP_A = """
    package p;
    public class PowerShellFencer extends BaseFencer implements FenceProtocol {
        public boolean tryFence(String target, int attempts) {
            LOG.warn("unable to reach remote host over secure channel");
            return false;
        }
    }
"""
DP_B = DP_A.replace("PowerShellFencer", "ShellCommandFencer")
DP_C = DP_A.replace("PowerShellFencer", "TelnetFencer").replace(
    '"unable to reach remote host over secure channel"', '"telnet fallback engaged for fencing"'
)


def dp_pair_oracle(statements, graph):
    pairs = set()
    for a, b in itertools.combinations(statements, 2):
        if a.static_text != b.static_text or not a.static_text:
            continue
        ka = (a.enclosing_type, a.enclosing_method_sig)
        kb = (b.enclosing_type, b.enclosing_method_sig)
        if kb in graph.override_map.get(ka, ()):
            pairs.add(frozenset({a.id, b.id}))
    return pairs


def test_dp_identical_message_in_sibling_override():
    _, statements, by_id, dup_sets, _, graph, _ = scan_units(DP_A, DP_B)
    (inst,) = detect_dp(dup_sets, by_id, graph)
    assert inst.pattern == "DP"
    assert len(inst.members) == 2
    assert dp_pair_oracle(statements, graph) == {frozenset(inst.members)}


def test_dp_unrelated_classes_no_instance():
    a = "package p; class A { void f() { LOG.info(\"shared text body\"); } }"
    b = "package p; class B { void f() { LOG.info(\"shared text body\"); } }"
    _, _, by_id, dup_sets, _, graph, _ = scan_units(a, b)
    assert detect_dp(dup_sets, by_id, graph) == []


def test_dp_three_siblings_two_carry_message():
    _, statements, by_id, dup_sets, _, graph, _ = scan_units(DP_A, DP_B, DP_C)
    insts = detect_dp(dup_sets, by_id, graph)
    assert len(insts) == 1
    assert dp_pair_oracle(statements, graph) == {frozenset(insts[0].members)}
    member_types = {by_id[m].enclosing_type for m in insts[0].members}
    assert member_types == {"p.PowerShellFencer", "p.ShellCommandFencer"}


def test_dp_parent_child_link():
    parent = """
    package p;
    public abstract class AbstractStore {
        public void persistMetadata(String id) {
            LOG.debug("metadata persistence deferred until next flush window");
        }
    }
    """
    child = """
    package p;
    public class LocalStore extends AbstractStore {
        public void persistMetadata(String id) {
            LOG.debug("metadata persistence deferred until next flush window");
        }
    }
    """
    _, _, by_id, dup_sets, _, graph, _ = scan_units(parent, child)
    (inst,) = detect_dp(dup_sets, by_id, graph)
    assert len(inst.members) == 2


# ---------------------------------------------------------------------- IL


def test_il_informational_only():
    a = "package p; class A { void f() { log.error(\"level drift sample\"); } }"
    b = "package p; class B { void g() { log.debug(\"level drift sample\"); } }"
    _, _, by_id, dup_sets, _, _, _ = scan_units(a, b)
    (inst,) = detect_il(dup_sets, by_id)
    assert inst.pattern == "IL"
    assert sorted(set(inst.evidence["levels"].values())) == ["debug", "error"]


def test_detectors_never_invent_statements(corpus_scan):
    known = set(corpus_scan.statements_by_id)
    set_members = {m for d in corpus_scan.dup_sets for m in d.members}
    for inst in corpus_scan.instances:
        assert set(inst.members) <= known
        assert set(inst.members) <= set_members
