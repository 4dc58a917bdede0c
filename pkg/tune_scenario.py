# scratch tuning harness, not part of the package
import json, time, statistics, sys
import numpy as np
from ltrstar.scenario import load_scenario
from ltrstar.planner import run_task_sequence


def make_doc2(W, H, wall_x, gap_lo, gap_hi, pairs, clutter,
              start, max_iters, cadence, step=0.5, res=None, wall_th=0.5):
    objs, tasks = [], []
    for i, ((sx, sy), (tx, ty)) in enumerate(pairs, 1):
        objs.append({"id": f"o{i}",
                     "shape": {"shape": "disc", "center": [0.0, 0.5], "radius": 0.15},
                     "pose": {"xy": [sx, sy], "theta": 0.0}})
        tasks.append({"object_id": f"o{i}", "target_pose": {"xy": [tx, ty], "theta": 0.0}})
    res = res or round(0.01 * min(W, H), 3)
    t = wall_th / 2
    statics = [
        {"shape": "polygon", "vertices": [[wall_x - t, 0.0], [wall_x + t, 0.0],
                                          [wall_x + t, gap_lo], [wall_x - t, gap_lo]]},
        {"shape": "polygon", "vertices": [[wall_x - t, gap_hi], [wall_x + t, gap_hi],
                                          [wall_x + t, H], [wall_x - t, H]]}]
    for (cx, cy, r) in clutter:
        statics.append({"shape": "disc", "center": [cx, cy], "radius": r})
    return {
        "name": "tune",
        "bounds": {"lower": [0.0, 0.0], "upper": [W, H]},
        "robot": {"kind": "disc", "start": list(start), "radius": 0.25},
        "static_obstacles": statics,
        "objects": objs, "tasks": tasks,
        "params": {"gamma": None, "step": step, "resolution": res, "budget_s": 1e9,
                   "max_iters": max_iters, "seed": 0, "lazyprm_cadence": cadence}}


def probe2(doc, seeds, cap, label, fso_cap=None):
    sc = load_scenario(json.dumps(doc))
    fso_cap = fso_cap or sc.params.max_iters
    data = {}
    t0 = time.perf_counter()
    runs = [("ltr", False, cap), ("lazyprm", False, cap),
            ("ltr_fso", True, fso_cap), ("birrt_fso", True, fso_cap)]
    for name, fso, c in runs:
        planner = name.split("_")[0]
        data[name] = [run_task_sequence(sc, seed, planner=planner,
                                        first_solution_only=fso, max_iters=c)
                      for seed in seeds]
    wall = time.perf_counter() - t0

    def task_costs(name, task):
        return [r.outcome.final_cost for recs in data[name] for r in recs
                if r.task_index == task and r.success and r.outcome.final_cost]

    def iters_per_task(name, task):
        vals = []
        for recs in data[name]:
            tot, okay = 0, True
            for r in recs:
                if r.task_index == task:
                    if not r.success:
                        okay = False
                        break
                    tot += r.outcome.first_solution_iters or r.outcome.iterations
            if okay and tot:
                vals.append(tot)
        return vals

    print(f"== {label} (wall {wall:.0f}s, {len(seeds)} seeds) ==")
    ltr_wins = 0
    for task in range(1, 9):
        lc, pc = task_costs("ltr", task), task_costs("lazyprm", task)
        if lc and pc:
            lm, pm = statistics.median(lc), statistics.median(pc)
            win = lm < pm
            ltr_wins += win
            print(f"  task {task}: ltr {lm:6.2f}  prm {pm:6.2f}  {'LTR' if win else 'PRM':>3}"
                  f"  margin {100*(pm-lm)/pm:+5.1f}%  n={len(lc)},{len(pc)}")
        else:
            print(f"  task {task}: missing ltr={len(lc)} prm={len(pc)}")
    print(f"  -> ltr cost wins {ltr_wins}/8")
    l1, l8 = iters_per_task("ltr_fso", 1), iters_per_task("ltr_fso", 8)
    b1, b8 = iters_per_task("birrt_fso", 1), iters_per_task("birrt_fso", 8)
    if l1 and l8:
        print(f"  ltr fso iters: t1 med {statistics.median(l1):.0f} t8 {statistics.median(l8):.0f}"
              f" ratio {statistics.median(l8)/statistics.median(l1):.3f}")
    if b1 and b8:
        print(f"  birrt fso iters: t1 med {statistics.median(b1):.0f} t8 {statistics.median(b8):.0f}"
              f" ratio {statistics.median(b8)/statistics.median(b1):.3f}")
    fails = {p: sum(1 for recs in data[p] for r in recs if not r.success) for p in data}
    print(f"  failures: {fails}")
    return data


def config_v4(cap=150, cadence=50, max_iters=800):
    pairs = [
        ((2.0, 3.0), (16.0, 3.0)),
        ((2.0, 6.0), (18.0, 6.0)),
        ((2.0, 9.0), (16.0, 9.0)),
        ((4.0, 3.0), (18.0, 3.0)),
        ((4.0, 9.0), (20.0, 9.0)),
        ((4.0, 6.0), (16.0, 6.0)),
        ((6.0, 3.0), (20.0, 3.0)),
        ((6.0, 9.0), (18.0, 9.0)),
    ]
    clutter = [
        (8.5, 2.0, 0.6), (8.2, 9.8, 0.6), (13.6, 2.2, 0.6), (13.8, 9.6, 0.6),
        (8.8, 6.0, 0.55), (13.2, 6.2, 0.55), (5.0, 1.2, 0.5), (17.0, 1.4, 0.5),
        (5.2, 10.8, 0.5), (17.2, 10.6, 0.5), (2.8, 4.6, 0.45), (18.8, 7.6, 0.45),
    ]
    doc = make_doc2(W=22.0, H=12.0, wall_x=11.0, gap_lo=4.5, gap_hi=7.5,
                    pairs=pairs, clutter=clutter, start=(16.5, 9.0),
                    max_iters=max_iters, cadence=cadence)
    return doc


if __name__ == "__main__":
    seeds = list(range(6))
    probe2(config_v4(), seeds, 150, "v4 22x12 clutter cap150")


def config_v5(cadence=50, max_iters=800):
    W, H = 22.0, 12.0
    comb_xs = [2.0, 3.1, 4.2, 5.3]
    tgt_xs = [15.2, 16.3, 17.4, 18.5]

    def endwall(x, bottom):
        y0, y1 = (0.0, 1.6) if bottom else (10.4, 12.0)
        return {"shape": "polygon",
                "vertices": [[x - 0.1, y0], [x + 0.1, y0], [x + 0.1, y1], [x - 0.1, y1]]}

    statics = [
        {"shape": "polygon", "vertices": [[10.75, 0.0], [11.25, 0.0], [11.25, 4.5], [10.75, 4.5]]},
        {"shape": "polygon", "vertices": [[10.75, 7.5], [11.25, 7.5], [11.25, 12.0], [10.75, 12.0]]},
        endwall(0.9, True), endwall(6.4, True), endwall(14.1, True), endwall(19.6, True),
        endwall(0.9, False), endwall(6.4, False), endwall(14.1, False), endwall(19.6, False),
        {"shape": "disc", "center": [8.6, 3.0], "radius": 0.5},
        {"shape": "disc", "center": [8.6, 9.0], "radius": 0.5},
        {"shape": "disc", "center": [13.4, 3.0], "radius": 0.5},
        {"shape": "disc", "center": [13.4, 9.0], "radius": 0.5},
        {"shape": "disc", "center": [7.6, 6.0], "radius": 0.55},
        {"shape": "disc", "center": [14.4, 6.0], "radius": 0.55},
    ]

    def obj(i, x, bottom):
        y, theta = (0.7, 0.0) if bottom else (11.3, 3.141592653589793)
        return {"id": f"o{i}",
                "shape": {"shape": "disc", "center": [0.0, 0.5], "radius": 0.15},
                "pose": {"xy": [x, y], "theta": theta}}

    # bottom-left comb: o1..o4 at xs; top-left comb: o5..o8
    objs = [obj(i + 1, x, True) for i, x in enumerate(comb_xs)]
    objs += [obj(i + 5, x, False) for i, x in enumerate(comb_xs)]

    def tgt(x, bottom):
        y, theta = (0.7, 0.0) if bottom else (11.3, 3.141592653589793)
        return {"xy": [x, y], "theta": theta}

    # picks: full pockets first; places: fill so late targets sit between bodies
    tasks = [
        {"object_id": "o2", "target_pose": tgt(15.2, True)},
        {"object_id": "o6", "target_pose": tgt(15.2, False)},
        {"object_id": "o3", "target_pose": tgt(17.4, True)},
        {"object_id": "o7", "target_pose": tgt(17.4, False)},
        {"object_id": "o1", "target_pose": tgt(16.3, True)},
        {"object_id": "o5", "target_pose": tgt(16.3, False)},
        {"object_id": "o4", "target_pose": tgt(18.5, True)},
        {"object_id": "o8", "target_pose": tgt(18.5, False)},
    ]
    return {
        "name": "desk8",
        "bounds": {"lower": [0.0, 0.0], "upper": [W, H]},
        "robot": {"kind": "disc", "start": [12.5, 6.0], "radius": 0.25},
        "static_obstacles": statics,
        "objects": objs, "tasks": tasks,
        "params": {"gamma": None, "step": 0.5, "resolution": 0.12, "budget_s": 1e9,
                   "max_iters": max_iters, "seed": 0, "lazyprm_cadence": cadence}}


def config_v6(cadence=50, max_iters=800, spacing=1.2, gap=(5.0, 7.0)):
    import copy
    doc = config_v5(cadence=cadence, max_iters=max_iters)
    doc = copy.deepcopy(doc)
    # respace the combs
    comb_xs = [2.0 + spacing * i for i in range(4)]
    tgt_xs = [15.2 + spacing * i for i in range(4)]
    for i in range(4):
        doc["objects"][i]["pose"]["xy"][0] = comb_xs[i]
        doc["objects"][i + 4]["pose"]["xy"][0] = comb_xs[i]
    order = [0, 2, 1, 3]  # fill order t1->15.2, t3->17.6, t5->16.4, t7->18.8
    for k, oi in enumerate(order):
        doc["tasks"][2 * k]["target_pose"]["xy"][0] = tgt_xs[oi]
        doc["tasks"][2 * k + 1]["target_pose"]["xy"][0] = tgt_xs[oi]
    # comb end walls follow the spacing
    lo_l, hi_l = 2.0 - spacing + 0.1, 2.0 + 3 * spacing + spacing - 0.1
    lo_r, hi_r = 15.2 - spacing + 0.1, 15.2 + 3 * spacing + spacing - 0.1
    def endwall(x, bottom):
        y0, y1 = (0.0, 1.6) if bottom else (10.4, 12.0)
        return {"shape": "polygon",
                "vertices": [[x - 0.1, y0], [x + 0.1, y0], [x + 0.1, y1], [x - 0.1, y1]]}
    statics = [
        {"shape": "polygon", "vertices": [[10.75, 0.0], [11.25, 0.0], [11.25, gap[0]], [10.75, gap[0]]]},
        {"shape": "polygon", "vertices": [[10.75, gap[1]], [11.25, gap[1]], [11.25, 12.0], [10.75, 12.0]]},
        endwall(lo_l, True), endwall(hi_l, True), endwall(lo_r, True), endwall(hi_r, True),
        endwall(lo_l, False), endwall(hi_l, False), endwall(lo_r, False), endwall(hi_r, False),
        {"shape": "disc", "center": [8.6, 3.0], "radius": 0.5},
        {"shape": "disc", "center": [8.6, 9.0], "radius": 0.5},
        {"shape": "disc", "center": [13.4, 3.0], "radius": 0.5},
        {"shape": "disc", "center": [13.4, 9.0], "radius": 0.5},
        {"shape": "disc", "center": [7.6, 6.0], "radius": 0.55},
        {"shape": "disc", "center": [14.4, 6.0], "radius": 0.55},
        {"shape": "disc", "center": [9.4, 4.6], "radius": 0.45},
        {"shape": "disc", "center": [12.6, 7.4], "radius": 0.45},
    ]
    doc["static_obstacles"] = statics
    return doc


def config_v8(cadence=50, max_iters=800, spacing=1.3, gap=(4.8, 7.2)):
    import copy
    doc = config_v6(spacing=spacing, gap=gap, cadence=cadence, max_iters=max_iters)
    doc = copy.deepcopy(doc)
    # drop the outer comb end walls: keep only the inner (gap-side) walls
    lo_l = 2.0 - spacing + 0.1
    hi_l = 2.0 + 4 * spacing - 0.1
    lo_r = 15.2 - spacing + 0.1
    hi_r = 15.2 + 4 * spacing - 0.1
    def is_outer(s):
        if s["shape"] != "polygon":
            return False
        xs = {v[0] for v in s["vertices"]}
        cx = sum(xs) / len(xs)
        return abs(cx - lo_l) < 0.2 or abs(cx - hi_r) < 0.2
    doc["static_obstacles"] = [s for s in doc["static_obstacles"] if not is_outer(s)]
    return doc


def config_v9(cadence=50, max_iters=800, gap=(4.8, 7.2)):
    W, H = 22.0, 12.0
    PI = 3.141592653589793
    left_xs = [1.5, 2.8, 4.1, 5.4]     # strip open on the left end
    tgt_xs = [15.8, 17.1, 18.4, 19.7]  # strip open on the right end

    def strip_wall(x, bottom):
        y0, y1 = (0.0, 1.6) if bottom else (10.4, 12.0)
        return {"shape": "polygon",
                "vertices": [[x - 0.1, y0], [x + 0.1, y0], [x + 0.1, y1], [x - 0.1, y1]]}

    def bookend(x, bottom):
        return {"shape": "disc", "center": [x, 1.2 if bottom else 10.8], "radius": 0.15}

    statics = [
        {"shape": "polygon", "vertices": [[10.75, 0.0], [11.25, 0.0], [11.25, gap[0]], [10.75, gap[0]]]},
        {"shape": "polygon", "vertices": [[10.75, gap[1]], [11.25, gap[1]], [11.25, 12.0], [10.75, 12.0]]},
        strip_wall(7.4, True), strip_wall(7.4, False),
        strip_wall(13.8, True), strip_wall(13.8, False),
        bookend(6.7, True), bookend(6.7, False),
        bookend(14.5, True), bookend(14.5, False),
        {"shape": "disc", "center": [8.8, 3.2], "radius": 0.5},
        {"shape": "disc", "center": [8.8, 8.8], "radius": 0.5},
        {"shape": "disc", "center": [13.2, 3.2], "radius": 0.5},
        {"shape": "disc", "center": [13.2, 8.8], "radius": 0.5},
        {"shape": "disc", "center": [7.9, 6.0], "radius": 0.55},
        {"shape": "disc", "center": [14.1, 6.0], "radius": 0.55},
    ]

    def obj(i, x, bottom):
        y, theta = (0.7, 0.0) if bottom else (11.3, PI)
        return {"id": f"o{i}",
                "shape": {"shape": "disc", "center": [0.0, 0.5], "radius": 0.15},
                "pose": {"xy": [x, y], "theta": theta}}

    objs = [obj(i + 1, x, True) for i, x in enumerate(left_xs)]      # o1..o4 bottom
    objs += [obj(i + 5, x, False) for i, x in enumerate(left_xs)]    # o5..o8 top

    def tgt(x, bottom):
        return {"xy": [x, 0.7 if bottom else 11.3], "theta": 0.0 if bottom else PI}

    # picks: full pockets early, open spots late; places: far spots early so
    # late targets sit in traveled space yet between fresh bodies
    tasks = [
        {"object_id": "o3", "target_pose": tgt(19.7, True)},    # full pick pocket
        {"object_id": "o7", "target_pose": tgt(19.7, False)},
        {"object_id": "o4", "target_pose": tgt(18.4, True)},    # bookend-side pick
        {"object_id": "o8", "target_pose": tgt(18.4, False)},
        {"object_id": "o2", "target_pose": tgt(17.1, True)},    # single-side pick
        {"object_id": "o6", "target_pose": tgt(17.1, False)},
        {"object_id": "o1", "target_pose": tgt(15.8, True)},    # open pick, full place pocket
        {"object_id": "o5", "target_pose": tgt(15.8, False)},
    ]
    return {
        "name": "desk8",
        "bounds": {"lower": [0.0, 0.0], "upper": [W, H]},
        "robot": {"kind": "disc", "start": [12.5, 6.0], "radius": 0.25},
        "static_obstacles": statics,
        "objects": objs, "tasks": tasks,
        "params": {"gamma": None, "step": 0.5, "resolution": 0.12, "budget_s": 1e9,
                   "max_iters": max_iters, "seed": 0, "lazyprm_cadence": cadence}}


def config_v10(cadence=50, max_iters=800, gap=(4.8, 7.2), spacing=1.4):
    import copy
    doc = config_v9(cadence=cadence, max_iters=max_iters, gap=gap)
    doc = copy.deepcopy(doc)
    left_xs = [1.5 + spacing * i for i in range(4)]
    tgt_xs = [19.8 - spacing * (3 - i) for i in range(4)]
    for i in range(4):
        doc["objects"][i]["pose"]["xy"][0] = left_xs[i]
        doc["objects"][i + 4]["pose"]["xy"][0] = left_xs[i]
    # fill order stays far-to-near: 19.8, 18.4, 17.0, 15.6
    fill = [tgt_xs[3], tgt_xs[2], tgt_xs[1], tgt_xs[0]]
    for k in range(4):
        doc["tasks"][2 * k]["target_pose"]["xy"][0] = fill[k]
        doc["tasks"][2 * k + 1]["target_pose"]["xy"][0] = fill[k]
    # bookends track the racks
    for s in doc["static_obstacles"]:
        if s["shape"] == "disc" and s["radius"] == 0.15:
            if s["center"][0] < 11.0:
                s["center"][0] = left_xs[-1] + spacing
            else:
                s["center"][0] = tgt_xs[0] - spacing
    return doc


def config_v11(cadence=50, max_iters=800, gap=(4.8, 7.2), spacing=1.4):
    import copy
    doc = config_v10(cadence=cadence, max_iters=max_iters, gap=gap, spacing=spacing)
    doc = copy.deepcopy(doc)
    tgt_xs = [19.8 - spacing * (3 - i) for i in range(4)]
    fill = tgt_xs  # near-to-far: every place slots in beside the last body
    for k in range(4):
        doc["tasks"][2 * k]["target_pose"]["xy"][0] = fill[k]
        doc["tasks"][2 * k + 1]["target_pose"]["xy"][0] = fill[k]
    return doc
