"""Plain-text rendering of plan reports for terminal consumption."""

from __future__ import annotations

from .plan import PlanReport


def text_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def line(cells):
        return "  ".join(c.rjust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(row) for row in rows)
    return "\n".join(out)


def _num(v, nd=2) -> str:
    if v is None:
        return "-"
    return f"{v:,.{nd}f}"


def format_report(report: PlanReport) -> str:
    head = [
        f"plan: {report.name}  [{report.mode}, {report.status}]",
        f"objective: {_num(report.objective)} $",
    ]
    if report.lower_bound is not None:
        head.append(f"lower bound: {_num(report.lower_bound)} $")
    if report.gap is not None:
        head.append(f"gap: {report.gap:.3e}")
    head.append(f"model digest: {report.model_digest}")
    sections = ["\n".join(head)]

    techs = sorted(report.capacity_by_technology)
    if techs:
        rows = [[str(y)] + [_num(report.capacity_by_technology[t][y], 1)
                            for t in techs]
                for y in report.years]
        sections.append("operating capacity (MW)\n"
                        + text_table(["year"] + techs, rows))

    if report.reliability:
        rows = []
        for y in report.years:
            rel = report.reliability[y]
            rows.append([str(y), _num(rel["peak_mw"], 1),
                         _num(rel["shed_mwh"], 1),
                         _num(rel["reserve_shortfall_mw"], 1),
                         _num(sum(rel["rps_shortfall_mwh"].values()), 1)])
        sections.append("reliability\n" + text_table(
            ["year", "peak_mw", "shed_mwh", "reserve_short_mw",
             "rps_short_mwh"], rows))

    if report.materials:
        rows = []
        for y in report.years:
            for m in sorted(report.materials):
                led = report.materials[m][y]
                rows.append([str(y), m, _num(led["used_t"], 2),
                             _num(led["remaining_supply_t"], 2),
                             _num(led["stock_t"], 2)])
        sections.append("materials (t)\n" + text_table(
            ["year", "material", "used", "remaining_supply", "stock"], rows))

    if report.costs:
        rows = []
        for y in report.years:
            per = report.costs[y]
            rows.append([str(y), _num(per["investment"]),
                         _num(per["fixed_om"] + per["variable"]),
                         _num(per["load_shedding_penalty"]
                              + per["reserve_margin_penalty"]
                              + per["rps_penalty"]),
                         _num(per["total"])])
        tot = report.cost_totals
        rows.append(["all", _num(tot.get("investment")),
                     _num(tot.get("fixed_om", 0) + tot.get("variable", 0)),
                     _num(tot.get("load_shedding_penalty", 0)
                          + tot.get("reserve_margin_penalty", 0)
                          + tot.get("rps_penalty", 0)),
                     _num(tot.get("total"))])
        sections.append("costs ($)\n" + text_table(
            ["year", "investment", "operation", "penalty", "total"], rows))

    return "\n\n".join(sections) + "\n"
