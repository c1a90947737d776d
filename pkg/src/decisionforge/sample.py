"""Bundled worked example: one team's complete decision record for picking
and developing an advanced digital stethoscope.

The record runs the whole method end to end: thirty opportunities screened
through a three-stage funnel, twenty customer needs against twenty-six
metrics, competitive benchmarks, marginal/ideal targets, a morphological
chart with seven concepts, a relative screening matrix, and a weighted
scoring matrix.  Declared worksheet results are kept verbatim, slips
included -- one mis-summed total, survivor counts that don't match the
grids -- because catching those is what the audit engine is for.

``sample_project()`` builds the record fresh on every call.
"""

from __future__ import annotations

from .constraints import parse_constraint, parse_measurement
from .model import (
    BenchmarkProduct,
    Concept,
    DeclaredScoreRow,
    DeclaredScreenRow,
    Funnel,
    Metric,
    MorphChart,
    MorphColumn,
    Need,
    NeedMetricLink,
    Opportunity,
    Project,
    PughMatrix,
    ScoringMatrix,
    Stage,
    TargetSpec,
    Verdict,
    WeightedCriterion,
)
from .numbers import ExactDecimal

# --------------------------------------------------------------------------
# Opportunity generation: 30 candidate devices around the cardiovascular
# system, screened in three funnel stages.

_OPPORTUNITIES = (
    ("opp01", "Remote dielectric sensing", ""),
    ("opp02", "Pneumatically external cardiac compressor", ""),
    ("opp03", "An external transcutaneous cardiac pacemaker (noninvasive)", ""),
    ("opp04", "Bio-impedance sensors", ""),
    ("opp05", "Cardiopulmonary exercise testing", ""),
    ("opp06", "Arrhythmia detector and alarm", ""),
    ("opp07", "Blood pressure alarm", ""),
    ("opp08", "Wireless implantable fiber-optic oximeter catheter", ""),
    ("opp09", "Automatic syringe actuator for an injector", ""),
    ("opp10", "Handheld echocardiography", ""),
    ("opp11", "Prosthetic vascular grafts with fewer thrombogenic surfaces", ""),
    ("opp12", "Wearable cardiac defibrillator", ""),
    ("opp13", "Implantable cardioverter-defibrillators", ""),
    ("opp14", "A ventricular bypass (assist) device", ""),
    (
        "opp15",
        "Cardiovascular stent",
        "A tube device intended to be permanently implanted in a natural or "
        "artificial vessel.",
    ),
    ("opp16", "Heart preservation/transport system", ""),
    (
        "opp17",
        "An automatic rotating tourniquet",
        "Prevents blood flow in one limb at a time.",
    ),
    ("opp18", "A high-energy DC-defibrillator", ""),
    (
        "opp19",
        "A compressible limb sleeve with flexible fabric",
        "A sleeve worn around the limb.",
    ),
    (
        "opp20",
        "A CPR aid device with feedback",
        "Gives the rescuer real-time feedback on the quality of CPR being "
        "delivered.",
    ),
    ("opp21", "Surgical vessel dilator", "Enlarges or calibrates a vessel."),
    (
        "opp22",
        "Endovascular suturing system",
        "Provides fixation and sealing between an endovascular graft and the "
        "native artery.",
    ),
    (
        "opp23",
        "Pacemakers with piezoelectric elements",
        "Better durability and portability.",
    ),
    (
        "opp24",
        "Cardiovascular intravascular filter",
        "Prevents pulmonary blood clots.",
    ),
    (
        "opp25",
        "Automatic portable blood component extractor",
        "Separates blood components from centrifuged whole blood.",
    ),
    ("opp26", "Oscillometric blood volume measuring device", ""),
    (
        "opp27",
        "Mechanical ventilator with breath-moisture control",
        "Automatically adjusts moisture from the patient's breath moisture "
        "level after cardiac surgery.",
    ),
    (
        "opp28",
        "Electronic stethoscope with smartphone link",
        "Connects to a smartphone over Wi-Fi or Bluetooth.",
    ),
    (
        "opp29",
        "Electronic stethoscope with auscultation sharing",
        "Recorded auscultation can be sent to a partner for an immediate "
        "second opinion.",
    ),
    (
        "opp30",
        "Advanced digital stethoscope",
        "Loaded filtering and amplifying electronics with embedded "
        "artificial intelligence.",
    ),
)

_STAGE_A = ("Biocompatibility", "Raw material", "Customer need")
_STAGE_B = ("Cost", "Performance & reliability", "Risk")
_STAGE_C = ("Customizability", "Market demand", "Aesthetics and usability",
            "Developing time")

# Marks are one letter per stage criterion: y(es) / n(o) / u(nmarked).
_STAGE_A_ROWS = (
    ("opp01", "ynn", "fail"),
    ("opp02", "yyn", "fail"),
    ("opp03", "yyy", "pass"),
    ("opp04", "yyn", "fail"),
    ("opp05", "yny", "fail"),
    ("opp06", "yyn", "fail"),
    ("opp07", "yyy", "pass"),
    ("opp08", "yyy", "pass"),
    ("opp09", "yyy", "pass"),
    ("opp10", "ynn", "fail"),
    ("opp11", "yyy", "pass"),
    ("opp12", "yyy", "pass"),
    ("opp13", "nyy", "fail"),
    ("opp14", "yyn", "fail"),
    ("opp15", "nyn", "fail"),
    ("opp16", "nny", "fail"),
    ("opp17", "ynn", "fail"),
    ("opp18", "yyn", "fail"),
    ("opp19", "yyy", "pass"),
    ("opp20", "yyn", "fail"),
    ("opp21", "nyn", "fail"),
    ("opp22", "nyy", "fail"),
    ("opp23", "nyy", "fail"),
    ("opp24", "nyy", "fail"),
    ("opp25", "yyy", "pass"),
    ("opp26", "yyy", "pass"),
    ("opp27", "yyy", "pass"),
    ("opp28", "yyn", "fail"),
    ("opp29", "yyy", "pass"),
    ("opp30", "yyy", "pass"),
)

# The second-stage worksheet had two unmarked cells (opp08 and opp12,
# performance column) and no row at all for opp29.  The team nevertheless
# wrote "pass" for opp12 -- the funnel report flags that row.
_STAGE_B_ROWS = (
    ("opp07", "yyy", "pass"),
    ("opp08", "yuy", "fail"),
    ("opp09", "yyy", "pass"),
    ("opp03", "yny", "fail"),
    ("opp27", "yyy", "pass"),
    ("opp25", "yyn", "fail"),
    ("opp26", "nny", "fail"),
    ("opp12", "yuy", "pass"),
    ("opp19", "yny", "fail"),
    ("opp11", "yyn", "fail"),
    ("opp30", "yyy", "pass"),
)

# opp08 reappears here although it had already been dropped; the funnel
# report flags it as an extra row rather than reviving it.
_STAGE_C_ROWS = (
    ("opp27", "nnyn", "fail"),
    ("opp08", "yyyn", "fail"),
    ("opp30", "yyyy", "pass"),
    ("opp07", "ynyn", "fail"),
    ("opp09", "ynyn", "fail"),
)

_MARK_LETTERS = {"y": "pass", "n": "fail", "u": "unknown"}


def _rows(criteria: tuple[str, ...], data) -> tuple[Verdict, ...]:
    rows = []
    for opportunity_id, letters, declared in data:
        marks = {
            criterion: _MARK_LETTERS[letter]
            for criterion, letter in zip(criteria, letters)
        }
        rows.append(
            Verdict(opportunity_id=opportunity_id, marks=marks, declared=declared)
        )
    return tuple(rows)


# --------------------------------------------------------------------------
# Customer needs (1-5 importance) and the metric catalog.

_NEEDS = (
    (5, "The Advanced digital stethoscope has greater strength and durability."),
    (5, "The stethoscope has high life expectancy with gigantic performance "
        "of its components"),
    (5, "The stethoscope is more liable to wear and tear"),
    (5, "The stethoscope power is convenient"),
    (5, "The battery does not deplete quickly if it kept on overnight "
        "emergency room"),
    (4, "Advanced digital stethoscope has 3 pack modes (cardiac, lung, wide "
        "range) which allows the user to auscultate specific areas more "
        "precisely"),
    (4, "The battery is rechargeable"),
    (4, "Advanced digital stethoscope has multiple memories which makes it "
        "useful to share or review with peers."),
    (4, "The stethoscope is capable of recording and rewinding for a long "
        "time."),
    (4, "The stethoscope allows the user to use it everywhere comfortably"),
    (4, "The device works on all patients including physically deformed "
        "patients"),
    (3, "The Advanced digital stethoscope easy to set up and use"),
    (3, "The Advanced digital stethoscope is easy to clean with alcohol."),
    (3, "The display system which indicates time date, battery level, volume "
        "and frequency is really handy."),
    (3, "stethoscope is easy to change diaphragm/bell filters without moving "
        "scopes just by pushing a button."),
    (3, "Advanced digital stethoscope is lightweight and it tucks securely "
        "around the neck"),
    (3, "stethoscope have a digital modality connectivity"),
    (2, "The Advanced digital stethoscope is easy to see the volume"),
    (2, "The installation of the digital stethoscope is simple and portable"),
    (2, "The Advanced digital stethoscope is easy to control while working "
        "with the to the patient"),
)

# (ordinal, name, importance, unit) -- unit labels kept verbatim from the
# metric worksheet even where later tables used different ones.
_METRICS = (
    (1, "Time of assembly", 1, "minute"),
    (2, "Sound volume adjustment", 3, "Decibel"),
    (3, "Connectivity with other external devices", 3, "list"),
    (4, "Turning of the diaphragm to bell filter.", 3, "subj"),
    (5, "The resolution of the display system", 2, "Dots/inch"),
    (6, "Power consumption.", 3, "Watts"),
    (7, "Strength and durability", 5, "N/m ²"),
    (8, "Life span expectancy.", 4, "years"),
    (9, "Sound amplification and filtration range", 5, "Hz"),
    (10, "Length of the sound tubing.", 3, "Cm"),
    (11, "Total mass of the digital stethoscope", 3, "g"),
    (12, "cost for maintenance", 2, "USD"),
    (13, "Flexibility of wiring system.", 3, "m/N"),
    (14, "Sound pressure level of ear piece", 4, "dB"),
    (15, "Maximum capacity of memory used.", 2, "Gb"),
    (16, "Running time of the stethoscope's battery", 4, "Hr"),
    (17, "cost for manufacturing.", 3, "USD"),
    (18, "The stethoscope makes user independent.", 3, "Subj"),
    (19, "Sensitivity of stethoscope", 4, "Radian/meter"),
    (20, "Special spare parts for maintenance", 2, "list"),
    (21, "Operating temperature of stethoscope", 3, "K"),
    (22, "Bell mode and diaphragm amplification capacity", 4, "hz"),
    (23, "Patient heart rate measurement range", 4, "Beat /min"),
    (24, "Automated power management system (on/ off)", 2, "subj"),
    (25, "Bluetooth modality distance range", 3, "m"),
    (26, "Relative humidity", 2, "%"),
)

# The traceability matrix was filled in for the ease-of-use cluster only;
# the coverage report makes the gap visible instead of hiding it.
_LINKS = {
    "n12": (3, 11, 20, 26),
    "n13": (7, 18, 26),
    "n14": (5,),
    "n15": (4, 18),
    "n18": (2, 18),
}

# --------------------------------------------------------------------------
# Competitive benchmarking: measured values (free-form text, parsed
# leniently) and 1-5 perceived-satisfaction dots per metric ordinal.

_BENCHMARKS = (
    (
        "acoustic",
        "Acoustic stethoscope",
        {
            1: "none", 2: "80", 3: "none", 4: "none", 5: "none", 6: "none",
            7: "weaker", 8: "Max 2 yr", 9: "689- 2584 Hz", 10: "22-31",
            11: "~180", 12: "none", 13: "flexible", 14: "none", 15: "none",
            16: "none", 17: "150-190", 18: "none", 19: "~45.7- 60.6%",
            20: "none", 21: "-32- 122", 22: "none", 23: "50-100", 24: "none",
            25: "none", 26: "none",
        },
        {
            1: 1, 7: 3, 8: 2, 9: 1, 10: 3, 11: 2, 13: 3, 14: 1, 17: 3,
            18: 1, 19: 2, 21: 1, 23: 1, 26: 3,
        },
    ),
    (
        "digital",
        "Digital stethoscope",
        {
            1: "Several minutes", 2: "70-80", 3: "available", 4: "180",
            5: "100", 6: "4 watt", 7: "Strong", 8: "5 yrs", 9: "40x",
            10: "~27", 11: "165-185", 13: "Much flexible", 14: "80-1",
            15: "2", 16: "48", 17: "315", 18: "yes", 19: "93-94.4%",
            20: "available", 21: "-25 -110", 22: "10-5000", 23: "40- 175",
            24: "available", 25: "12", 26: "15-93",
        },
        {
            1: 3, 2: 3, 3: 4, 4: 3, 5: 3, 6: 4, 7: 3, 8: 4, 9: 4, 10: 3,
            11: 4, 12: 3, 13: 4, 14: 3, 15: 4, 16: 3, 17: 2, 18: 4, 19: 3,
            20: 4, 21: 5, 22: 5, 23: 3, 24: 4, 25: 2, 26: 2,
        },
    ),
    (
        "littmann",
        "3M Littmann digital stethoscope",
        {
            1: "none", 2: "70-75", 3: "available", 4: "180", 5: "none",
            6: "6 watt", 7: "Strong", 8: "3 yrs", 9: "24x", 10: "22-27",
            11: "175", 12: "none", 13: "stiff", 15: "none", 16: "60",
            17: "~354", 18: "yes", 19: "56- 80%", 20: "none",
            21: "-22 - 104", 22: "20-2000", 23: "30-199", 24: "available",
            25: "10", 26: "15- 93",
        },
        {
            1: 4, 2: 3, 3: 3, 4: 3, 5: 1, 6: 3, 7: 3, 8: 3, 9: 3, 10: 3,
            11: 3, 13: 1, 14: 2, 16: 4, 17: 2, 18: 2, 19: 3, 21: 5, 22: 3,
            23: 2, 24: 4, 25: 2, 26: 2,
        },
    ),
)

# Marginal and ideal acceptance values per metric ordinal, verbatim.
_TARGETS = (
    (1, "10 -15 minutes", "Less than 10 min"),
    (2, "75 -80 db", "80 db"),
    (3, "available", "available"),
    (4, "160 to 180 degree", "180 degree"),
    (5, "90 to 100", "100"),
    (6, "Bellow 4 watts", "4 watts"),
    (7, "Good strength", "Excellent"),
    (8, "Bellow 5 years", ">= 5 years"),
    (9, "30-35x", "40x"),
    (10, "20 to 25 inch", "27 inch"),
    (11, "150 to 170 g", "175"),
    (12, "$10- $100", "$100"),
    (13, "Much flexible", "Ideally flexible"),
    (14, "50 to 70 db", "80db"),
    (15, "2gb", "4gb"),
    (16, "48 hours", "60 hours"),
    (17, "$300", "$315"),
    (18, "Yes", "Yes"),
    (19, "93-94.4%", "98%"),
    (20, "available", "available"),
    (21, "0-50 degree", "-21 -100 degree"),
    (22, "20-4000", "10-50000"),
    (23, "40-175 bpm", "20- 200bpm"),
    (24, "available", "available"),
    (25, "12 meter", "15 meter"),
    (26, "15 -93", "0-100"),
)

# --------------------------------------------------------------------------
# Concept generation: the morphological chart and the combinations the team
# carried forward (A-F from the first pass, DF combined later).

_CHART_COLUMNS = (
    ("Transducer", ("Condenser microphone", "Fiber optics microphone",
                    "MEMS microphone", "None")),
    ("Hearing mode", ("Electronics", "Acoustic", "Dual mode")),
    ("Head mode", ("Dual (Diaphragm and bell sides)", "Single")),
    ("Processing unit", ("None", "Filtration and amplification",
                         "Analog to digital conversion",
                         "signal recognition and clustering")),
    ("Transmission", ("Tubing(wired) earpieces", "Bluetooth Chipset",
                      "Pure path Wireless", "FM transmitter")),
    ("Visualization", ("None", "Embedded LCD Screen",
                       "Both LCD and Bluetooth devices")),
)

_CONCEPTS = (
    ("A", "Dual-head acoustic stethoscope",
     ("None", "Acoustic", "Dual (Diaphragm and bell sides)", "None",
      "Tubing(wired) earpieces", "None")),
    ("B", "Analog electronic dual-head stethoscope",
     ("Condenser microphone", "Electronics", "Dual (Diaphragm and bell sides)",
      "Filtration and amplification", "Tubing(wired) earpieces", "None")),
    ("C", "Single-head digital stethoscope with condenser microphone",
     ("Condenser microphone", "Electronics", "Single",
      "Analog to digital conversion", "Tubing(wired) earpieces",
      "Embedded LCD Screen")),
    ("D", "Bluetooth-aided digital single-head stethoscope",
     ("Condenser microphone", "Electronics", "Single",
      "Analog to digital conversion", "Bluetooth Chipset",
      "Both LCD and Bluetooth devices")),
    ("E", "Single-head digital stethoscope with pure-path wireless",
     ("Condenser microphone", "Electronics", "Single",
      "Analog to digital conversion", "Pure path Wireless",
      "Embedded LCD Screen")),
    ("F", "Digital stethoscope with AI and FM transmitter",
     ("MEMS microphone", "Electronics", "Single",
      "signal recognition and clustering", "FM transmitter",
      "Embedded LCD Screen")),
    ("DF", "Advanced digital stethoscope with AI embedded",
     ("Condenser microphone", "Dual mode", "Single",
      "signal recognition and clustering", "Bluetooth Chipset",
      "Both LCD and Bluetooth devices")),
)

# --------------------------------------------------------------------------
# Concept screening (relative to reference B) and the declared tally block.

_SCREEN_CRITERIA = (
    "Light weighted (Portability)",
    "Sensitivity (frequency response)",
    "Transmission Quality",
    "Ease of maintenance",
    "Easy to use",
    "Signal quality(output)",
    "low power consumption",
    "Cost",
)

_SCREEN_CONCEPTS = ("A", "B", "C", "D", "E", "F")

# One row per criterion, columns in _SCREEN_CONCEPTS order.
_SCREEN_MARKS = (
    (0, 0, -1, -1, -1, 0),
    (-1, 0, -1, 1, 1, 1),
    (-1, 0, 0, 1, 0, 0),
    (0, 0, 0, 1, 1, 0),
    (-1, 0, 1, 1, 1, 1),
    (-1, 0, 0, 0, 0, 1),
    (1, 0, 0, 0, 0, 0),
    (0, 0, 0, -1, -1, -1),
)

# Declared: (pluses, sames, minuses, net, rank, continue)
_SCREEN_DECLARED = {
    "A": (1, 3, 4, -3, 6, False),
    "B": (0, 8, 0, 0, 4, False),
    "C": (1, 5, 2, -1, 5, False),
    "D": (4, 2, 2, 2, 1, True),
    "E": (3, 3, 2, 1, 3, True),
    "F": (3, 4, 1, 2, 1, True),
}

# --------------------------------------------------------------------------
# Concept scoring.  Ratings are 1-5 against reference D; the declared block
# is verbatim from the worksheet, including the mis-summed E total (the
# written 3.45 does not match its own weighted cells, which sum to 3.75).

_SCORE_CONCEPTS = ("D", "E", "F", "DF")

# (criterion, weight, ratings per concept, declared weighted cells)
_SCORING_ROWS = (
    ("Light weighted (Portability)", "0.1",
     (3, 3, 4, 4), ("0.3", "0.3", "0.4", "0.4")),
    ("Sensitivity (frequency response)", "0.15",
     (4, 4, 4, 4), ("0.6", "0.6", "0.6", "0.6")),
    ("Transmission Quality", "0.15",
     (4, 5, 3, 4), ("0.6", "0.75", "0.45", "0.6")),
    ("Ease of maintenance", "0.1",
     (5, 4, 4, 5), ("0.5", "0.4", "0.4", "0.5")),
    ("Easy to use", "0.15",
     (4, 4, 5, 5), ("0.6", "0.6", "0.75", "0.75")),
    ("Signal quality(output)", "0.2",
     (3, 3, 5, 5), ("0.6", "0.6", "1.00", "1.00")),
    ("low power consumption", "0.05",
     (3, 2, 4, 4), ("0.15", "0.1", "0.2", "0.2")),
    ("Cost", "0.1",
     (4, 4, 3, 3), ("0.4", "0.4", "0.3", "0.3")),
)

# (total, rank, decision) per concept, as written.
_SCORE_DECLARED = {
    "D": ("3.75", 3, "drop"),
    "E": ("3.45", 4, "drop"),
    "F": ("4.1", 2, "drop"),
    "DF": ("4.35", 1, "develop"),
}


def _metric_id(ordinal: int) -> str:
    return f"m{ordinal:02d}"


def sample_project() -> Project:
    """The complete stethoscope decision record."""
    opportunities = tuple(
        Opportunity(id=oid, name=name, description=description)
        for oid, name, description in _OPPORTUNITIES
    )

    funnel = Funnel(
        stages=(
            Stage(
                name="Initial screening",
                criteria=_STAGE_A,
                unknown_policy="require-explicit",
                declared_count=10,
            ),
            Stage(
                name="Promising opportunities",
                criteria=_STAGE_B,
                unknown_policy="strict-fail",
                declared_count=5,
            ),
            Stage(
                name="Exceptional opportunities",
                criteria=_STAGE_C,
                unknown_policy="require-explicit",
                declared_count=1,
            ),
        ),
        verdicts={
            "Initial screening": _rows(_STAGE_A, _STAGE_A_ROWS),
            "Promising opportunities": _rows(_STAGE_B, _STAGE_B_ROWS),
            "Exceptional opportunities": _rows(_STAGE_C, _STAGE_C_ROWS),
        },
    )

    needs = tuple(
        Need(id=f"n{index:02d}", interpreted=text, importance=importance)
        for index, (importance, text) in enumerate(_NEEDS, start=1)
    )
    metrics = tuple(
        Metric(
            id=_metric_id(ordinal),
            ordinal=ordinal,
            name=name,
            unit=unit,
            importance=importance,
        )
        for ordinal, name, importance, unit in _METRICS
    )
    links = tuple(
        NeedMetricLink(need_id=need_id, metric_id=_metric_id(ordinal))
        for need_id in sorted(_LINKS)
        for ordinal in _LINKS[need_id]
    )

    benchmarks = tuple(
        BenchmarkProduct(
            id=pid,
            name=name,
            metric_values={
                _metric_id(ordinal): parse_measurement(text)
                for ordinal, text in sorted(values.items())
            },
            satisfaction={
                _metric_id(ordinal): dots
                for ordinal, dots in sorted(satisfaction.items())
            },
        )
        for pid, name, values, satisfaction in _BENCHMARKS
    )

    target_specs = tuple(
        TargetSpec(
            metric_id=_metric_id(ordinal),
            marginal=parse_constraint(marginal),
            ideal=parse_constraint(ideal),
        )
        for ordinal, marginal, ideal in _TARGETS
    )

    chart = MorphChart(
        id="stethoscope",
        columns=tuple(
            MorphColumn(name=name, fragments=fragments)
            for name, fragments in _CHART_COLUMNS
        ),
    )
    column_names = tuple(name for name, _ in _CHART_COLUMNS)
    concepts = tuple(
        Concept(
            id=cid,
            name=name,
            chart_id=chart.id,
            selection=dict(zip(column_names, selection)),
        )
        for cid, name, selection in _CONCEPTS
    )

    screening = PughMatrix(
        id="concept-screening",
        criteria=_SCREEN_CRITERIA,
        concept_ids=_SCREEN_CONCEPTS,
        reference_id="B",
        marks={
            criterion: dict(zip(_SCREEN_CONCEPTS, row))
            for criterion, row in zip(_SCREEN_CRITERIA, _SCREEN_MARKS)
        },
        declared={
            cid: DeclaredScreenRow(
                pluses=pluses,
                sames=sames,
                minuses=minuses,
                net=net,
                rank=rank,
                continue_=keep,
            )
            for cid, (pluses, sames, minuses, net, rank, keep) in
            _SCREEN_DECLARED.items()
        },
    )

    scoring = ScoringMatrix(
        id="concept-scoring",
        criteria=tuple(
            WeightedCriterion(id=name, name=name, weight=ExactDecimal(weight))
            for name, weight, _, _ in _SCORING_ROWS
        ),
        concept_ids=_SCORE_CONCEPTS,
        ratings={
            name: dict(zip(_SCORE_CONCEPTS, ratings))
            for name, _, ratings, _ in _SCORING_ROWS
        },
        declared={
            cid: DeclaredScoreRow(
                weighted={
                    name: ExactDecimal(cells[index])
                    for name, _, _, cells in _SCORING_ROWS
                },
                total=ExactDecimal(total),
                rank=rank,
                decision=decision,
            )
            for index, cid in enumerate(_SCORE_CONCEPTS)
            for total, rank, decision in [_SCORE_DECLARED[cid]]
        },
    )

    return Project(
        name="Advanced digital stethoscope",
        description=(
            "Decision record for a five-member team taking a field of thirty "
            "cardiovascular-device opportunities down to one product concept: "
            "a digital stethoscope with embedded signal intelligence."
        ),
        metadata={
            "mission statement": "Advanced electronics stethoscope",
            "team": "5 core members",
            "product introduction": "end of the second month",
        },
        opportunities=opportunities,
        funnel=funnel,
        needs=needs,
        metrics=metrics,
        links=links,
        benchmarks=benchmarks,
        target_specs=target_specs,
        charts=(chart,),
        concepts=concepts,
        pugh_matrices=(screening,),
        scoring_matrices=(scoring,),
    )


def main() -> int:
    """Write the sample project file to stdout (or to a path argument)."""
    import sys

    from .persistence import project_to_json

    blob = project_to_json(sample_project())
    if len(sys.argv) > 1:
        with open(sys.argv[1], "wb") as handle:
            handle.write(blob)
    else:
        sys.stdout.buffer.write(blob)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
