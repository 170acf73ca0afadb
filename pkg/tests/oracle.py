"""Independent brute-force reference for every measure.

Written directly from the measure definitions over plain dicts, sharing no
code with the package: rows are {"attrs": {...}, "truth": str, "pred": str,
"score_gan": float, "score_real": float} and selectors are lists of
(field, value) pairs.  Sentinels: "empty" for an empty group, "no-eligible"
for an empty ACS population, None for an undefined (degenerate-ratio) value.
"""

GAN = "GAN"
REAL = "Real"


def matches(conjuncts, attrs):
    return all(attrs.get(field) == value for field, value in conjuncts)


def select(rows, conjuncts):
    return [r for r in rows if matches(conjuncts, r["attrs"])]


def confusion(rows, conjuncts):
    group = select(rows, conjuncts)
    if not group:
        return "empty"
    tp = sum(1 for r in group if r["truth"] == GAN and r["pred"] == GAN)
    fn = sum(1 for r in group if r["truth"] == GAN and r["pred"] == REAL)
    tn = sum(1 for r in group if r["truth"] == REAL and r["pred"] == REAL)
    fp = sum(1 for r in group if r["truth"] == REAL and r["pred"] == GAN)
    return {"tp": tp, "tn": tn, "fp": fp, "fn": fn}


def individual(counts):
    tp, tn, fp, fn = counts["tp"], counts["tn"], counts["fp"], counts["fn"]
    total = tp + tn + fp + fn
    return {
        "acc": (tp + tn) / total,
        "acc_gan": tp / (tp + fn) if tp + fn > 0 else None,
        "acc_real": tn / (tn + fp) if tn + fp > 0 else None,
        "fpr": fp / (fp + tn) if fp + tn > 0 else None,
        "fnr": fn / (tp + fn) if tp + fn > 0 else None,
    }


def class_rate(rows, conjuncts, c):
    group = select(rows, conjuncts)
    if not group:
        return "empty"
    return sum(1 for r in group if r["pred"] == c) / len(group)


def _ratio(left, right):
    if left == 0.0 or right == 0.0:
        return None
    return min(left, right) / max(left, right)


def dp(rows, a, b, c):
    left = class_rate(rows, a, c)
    right = class_rate(rows, b, c)
    if left == "empty" or right == "empty":
        return "empty"
    return _ratio(left, right)


def conditional_rate(rows, conjuncts, c):
    group = select(rows, conjuncts)
    if not group:
        return "empty"
    truth_c = [r for r in group if r["truth"] == c]
    if not truth_c:
        return None
    return sum(1 for r in truth_c if r["pred"] == c) / len(truth_c)


def eo(rows, a, b, c):
    left = conditional_rate(rows, a, c)
    right = conditional_rate(rows, b, c)
    if left == "empty" or right == "empty":
        return "empty"
    if left is None or right is None:
        return None
    return _ratio(left, right)


def acs(rows, a, b, c, mode="truth_class_score"):
    left_group = select(rows, a)
    right_group = select(rows, b)
    if not left_group or not right_group:
        return "empty"

    def scores(group):
        out = []
        for r in group:
            if r["truth"] != c:
                continue
            if mode == "truth_class_score":
                out.append(r["score_gan"] if c == GAN else r["score_real"])
            else:
                out.append(r["score_gan"] if r["pred"] == GAN else r["score_real"])
        return out

    left_scores = scores(left_group)
    right_scores = scores(right_group)
    if not left_scores or not right_scores:
        return "no-eligible"
    left_mean = sum(left_scores) / len(left_scores)
    right_mean = sum(right_scores) / len(right_scores)
    if right_mean == 0.0:
        return None
    return 1.0 - left_mean / right_mean
