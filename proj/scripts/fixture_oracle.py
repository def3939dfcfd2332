#!/usr/bin/env python3
"""Brute-force oracle for fixtures/order_events.csv.

Re-derives every fact the fixture is built to satisfy straight from the raw
CSV (no shared code with the C++ library), fails loudly if one does not hold,
and writes the derived values as JSON so the C++ suites can compare against
them.
"""

import argparse
import csv
import itertools
import json
import sys
from collections import Counter
from datetime import datetime, timezone

ABBREV = {
    "RP": "receive payment",
    "AR": "archive",
    "RO": "receive order",
    "PO": "pack order",
    "AI": "add item",
    "SP": "ship parcel",
}

# Simple log for case id "order" and the action classifier, as displayed in
# the source material with abbreviated activity names.
EXPECTED_VARIANTS = [
    ["RP", "AR"],
    ["RO", "PO", "AI", "AI", "SP", "PO", "RP", "AR"],
    ["RO", "PO", "AI", "SP", "AI", "SP", "PO", "AR"],
    ["RO", "PO", "RP", "AI", "PO", "AR"],
    ["RO", "PO", "AI", "PO", "RP", "PO", "AI", "SP"],
]

DAY_MS = 24 * 60 * 60 * 1000

failures = []


def check(cond, what):
    if not cond:
        failures.append(what)
    print(("ok   " if cond else "FAIL ") + what)


def typed(cell):
    """Int, then finite real, else text. Empty cells are undefined (None)."""
    if cell == "":
        return None
    try:
        if str(int(cell)) == cell:
            return int(cell)
    except ValueError:
        pass
    return cell


def load(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    events = []
    for row_index, row in enumerate(body):
        attrs = {}
        for name, cell in zip(header, row):
            if name == "time":
                stamp = datetime.strptime(cell, "%d/%m/%Y %H:%M").replace(tzinfo=timezone.utc)
                attrs["time"] = int(stamp.timestamp() * 1000)
            else:
                value = typed(cell)
                if value is not None:
                    attrs[name] = value
        events.append({"row": row_index, "attrs": attrs})
    return header, events


def attr(event, name):
    return event["attrs"].get(name)


def cases_of(events, case_id):
    return sorted({attr(e, case_id) for e in events if attr(e, case_id) is not None}, key=repr)


def trace_of(events, case_id, case):
    corr = [e for e in events if attr(e, case_id) == case]
    return sorted(corr, key=lambda e: (attr(e, "time"), e["row"]))


def simple_trace(trace, classifier):
    out = []
    for e in trace:
        parts = [attr(e, a) for a in classifier]
        if any(p is None for p in parts):
            continue
        out.append("+".join(str(p) for p in parts))
    return out


def case_attributes(trace):
    names = set()
    for e in trace:
        names.update(e["attrs"].keys())
    result = {}
    for name in names:
        values = [attr(e, name) for e in trace]
        if all(v is not None for v in values) and len(set(values)) == 1:
            result[name] = values[0]
    return result


def is_linearization(seq):
    for i, j in itertools.combinations(range(len(seq)), 2):
        if attr(seq[i], "time") > attr(seq[j], "time"):
            return False
    return True


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("csv")
    parser.add_argument("--out")
    args = parser.parse_args()

    header, events = load(args.csv)

    # Paper-text constraints.
    check(len(events) == 32, "32 events")
    check(set(header) == {"order", "time", "action", "user", "customer", "delivery",
                          "item", "type", "life-cycle"}, "column set")

    orders = cases_of(events, "order")
    check(orders == [23, 35, 41, 56, 72], "cases for order are {23,35,41,56,72}")

    # e-numbering: group by order (first appearance), then time, then source row.
    first_seen = []
    for e in events:
        if attr(e, "order") not in first_seen:
            first_seen.append(attr(e, "order"))
    numbered = sorted(events, key=lambda e: (first_seen.index(attr(e, "order")),
                                             attr(e, "time"), e["row"]))
    e = {k + 1: ev for k, ev in enumerate(numbered)}
    row_to_e = {ev["row"]: k for k, ev in e.items()}

    traces = {c: trace_of(events, "order", c) for c in orders}
    lengths = [len(traces[c]) for c in orders]
    check(lengths == [2, 8, 8, 6, 8], "trace lengths 2/8/8/6/8")
    check([row_to_e[x["row"]] for x in traces[23]] == [1, 2], "trace(23) = <e1,e2>")
    expected_ranges = {23: (1, 2), 35: (3, 10), 41: (11, 18), 56: (19, 24), 72: (25, 32)}
    for c, (lo, hi) in expected_ranges.items():
        check([row_to_e[x["row"]] for x in traces[c]] == list(range(lo, hi + 1)),
              f"trace({c}) = <e{lo}..e{hi}>")

    check(attr(e[1], "action") == "receive payment" and attr(e[2], "action") == "archive",
          "e1 receive payment, e2 archive")
    check(attr(e[1], "order") == 23, "e1 order 23")
    check(attr(e[1], "user") == "System" and attr(e[1], "customer") == "A7001",
          "e1 involves user System and customer A7001")
    check(attr(e[1], "item") is None, "item undefined on e1")
    check(attr(e[4], "action") == "pack order" and attr(e[8], "action") == "pack order",
          "e4, e8 are pack order")
    check(attr(e[4], "life-cycle") == "start" and attr(e[8], "life-cycle") == "complete",
          "e4 start, e8 complete")
    check(attr(e[4], "user") == "Alice" and attr(e[8], "user") == "Alice", "e4, e8 by Alice")

    variants = Counter(tuple(simple_trace(traces[c], ["action"])) for c in orders)
    expected = Counter(tuple(ABBREV[a] for a in v) for v in EXPECTED_VARIANTS)
    check(variants == expected, "action variants equal the displayed simple log")

    a7001_orders = {attr(x, "order") for x in events if attr(x, "customer") == "A7001"}
    check(len(a7001_orders) == 3, "customer A7001 spans 3 orders")
    d623_orders = {attr(x, "order") for x in events if attr(x, "delivery") == 623}
    check(len(d623_orders) == 2, "delivery 623 spans 2 orders")

    runs = []
    for c in orders:
        t = traces[c]
        for a, b in zip(t, t[1:]):
            if attr(a, "action") == attr(b, "action"):
                runs.append([row_to_e[a["row"]], row_to_e[b["row"]]])
    check(runs == [[5, 6]], "<e5,e6> is the only equal-action run")
    check(simple_trace(traces[23], ["customer"]) == ["A7001"], "case 23 customer trace <A7001>")
    check("customer" not in case_attributes(traces[23]), "customer is not a case attribute of 23")

    # Derived values.
    out = {"event_count": len(events)}
    out["e_to_row"] = {str(k): ev["row"] for k, ev in e.items()}
    out["attribute_names"] = sorted({n for ev in events for n in ev["attrs"]})
    out["attribute_stats"] = {}
    for name in out["attribute_names"]:
        vals = [attr(ev, name) for ev in events if attr(ev, name) is not None]
        out["attribute_stats"][name] = {"defined": len(vals), "distinct": len(set(vals))}
    out["trace_lengths"] = {str(c): len(traces[c]) for c in orders}
    out["case_attributes"] = {
        str(c): sorted(case_attributes(traces[c]).keys()) for c in orders}
    out["global_case_attributes"] = sorted(
        set.intersection(*(set(case_attributes(traces[c])) for c in orders)))
    out["action_classes"] = sorted({attr(ev, "action") for ev in events})
    out["user_classes"] = sorted({attr(ev, "user") for ev in events})

    def variant_list(case_id, classifier):
        cs = cases_of(events, case_id)
        counts = Counter(tuple(simple_trace(trace_of(events, case_id, c), classifier)) for c in cs)
        return sorted(([n, list(v)] for v, n in counts.items()), key=lambda x: (-x[0], x[1]))

    out["variants_order_action"] = variant_list("order", ["action"])
    out["variants_customer_order"] = variant_list("customer", ["order"])
    check(any(len(v) == 3 and n == 1 for n, v in out["variants_customer_order"]),
          "customer/order simple log has a length-3 variant")
    a7001 = simple_trace(trace_of(events, "customer", "A7001"), ["order"])
    check(len(set(a7001)) == 3, "A7001 variant lists 3 order ids")
    out["a7001_order_variant"] = a7001
    out["delivery_defined"] = sum(1 for ev in events if attr(ev, "delivery") is not None)

    # Selection predicates.
    def variant_freq(c, classifier):
        mine = simple_trace(traces[c], classifier)
        return sum(1 for d in orders if simple_trace(traces[d], classifier) == mine)

    phi = {
        "phi1": lambda c: case_attributes(traces[c]).get("type") == "online",
        "phi2": lambda c: attr(traces[c][0], "action") == "receive order",
        "phi3": lambda c: attr(traces[c][-1], "time") - attr(traces[c][0], "time") < DAY_MS,
        "phi4": lambda c: variant_freq(c, ["action"]) >= 10,
    }
    out["selections"] = {k: [c for c in orders if f(c)] for k, f in phi.items()}
    check(out["selections"]["phi2"] == [35, 41, 56, 72], "phi2 selects cases starting with RO")
    check(out["selections"]["phi4"] == [], "phi4 selects nothing")

    # Projection predicates, evaluated per event with case and log context.
    action_counts = Counter(attr(ev, "action") for c in orders for ev in traces[c])

    def last_occurrence(ev, trace):
        i = trace.index(ev)
        return all(attr(ev, "action") != attr(later, "action") for later in trace[i + 1:])

    psi = {
        "psi1": lambda ev, t: attr(ev, "life-cycle") == "complete",
        "psi2": lambda ev, t: attr(ev, "delivery") is not None,
        "psi3": lambda ev, t: attr(ev, "type") == "online",
        "psi4": lambda ev, t: attr(ev, "user") in ("Alice", "Bob"),
        "psi5": last_occurrence,
        "psi6": lambda ev, t: action_counts[attr(ev, "action")] >= 5,
    }
    out["projections"] = {}
    for k, f in psi.items():
        out["projections"][k] = {
            str(c): [row_to_e[ev["row"]] for ev in traces[c] if f(ev, traces[c])] for c in orders}
    check(4 not in out["projections"]["psi1"]["35"], "psi1 removes e4")
    check(sum(len(v) for v in out["projections"]["psi2"].values()) == out["delivery_defined"],
          "psi2 keeps exactly the delivery-defined events")

    # Stacks: per-step (cases_in, cases_out, events_in, events_out).
    def aggregate_keep_last(log):
        result = {}
        for c, t in log.items():
            kept = []
            for i, ev in enumerate(t):
                if i + 1 < len(t) and attr(t[i + 1], "action") == attr(ev, "action"):
                    continue
                kept.append(ev)
            result[c] = kept
        return result

    def project(log, pred):
        return {c: [ev for ev in t if pred(ev)] for c, t in log.items()}

    def stats(before, after):
        return [len(before), len(after), sum(map(len, before.values())),
                sum(map(len, after.values()))]

    base = {c: list(traces[c]) for c in orders}
    complete = lambda ev: attr(ev, "life-cycle") == "complete"

    s1 = project(base, complete)
    s2 = aggregate_keep_last(s1)
    out["stack_project_then_aggregate"] = [stats(base, s1), stats(s1, s2)]
    r1 = aggregate_keep_last(base)
    r2 = project(r1, complete)
    out["stack_aggregate_then_project"] = [stats(base, r1), stats(r1, r2)]

    sel = {c: t for c, t in base.items() if phi["phi1"](c)}
    out["stack_select_phi1"] = [stats(base, sel)]

    b1 = project(base, lambda ev: attr(ev, "user") == "Bob")
    b2 = aggregate_keep_last(b1)
    out["stack_bob"] = [stats(base, b1), stats(b1, b2)]
    out["stack_bob_traces"] = {str(c): [row_to_e[ev["row"]] for ev in t] for c, t in b2.items()}

    # Equal-timestamp pairs inside a case, and linearizations of the partial order.
    ties = []
    for c in orders:
        t = traces[c]
        for a, b in itertools.combinations(t, 2):
            if attr(a, "time") == attr(b, "time"):
                ties.append([row_to_e[a["row"]], row_to_e[b["row"]]])
    out["equal_time_pairs"] = ties
    check(len(ties) >= 1, "fixture has equal-timestamp pairs inside a case")
    lin = [p for p in itertools.permutations(traces[35]) if is_linearization(p)]
    out["order35_linearizations"] = len(lin)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(out, fh, indent=1, sort_keys=True)

    if failures:
        print(f"{len(failures)} constraint(s) violated", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
