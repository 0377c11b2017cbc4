#!/usr/bin/env python3
"""Regenerates data/sample-catalog.json and the synthetic assessments.

Output is written in canonical form (the same bytes `serialize_catalog`
produces), so the SHA-256 of the file is the catalog fingerprint.

IA group 1 carries the control ids of the published catalog extract. Every
other control id is a synthetic placeholder: only the group sizes are known,
not the ids. Titles are short placeholders; standard text is not stored.
"""

import hashlib
import json
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

STANDARDS = [
    {"id": "iec-62443-3-3", "label": "IEC 62443-3-3", "id_prefix": "IEC"},
    {"id": "iso-iec-27000", "label": "ISO/IEC 27000 series", "id_prefix": "ISO-02"},
    {"id": "nist-sp-800", "label": "NIST SP 800-53/800-82", "id_prefix": "NIST-53"},
]
PREFIX = {s["id"]: s["id_prefix"] for s in STANDARDS}

REQUIREMENTS = [
    ("AV", "Availability", "The remote access path and the device stay usable when needed.", []),
    ("CC", "Communication Channels", "Connections between device, gateway, broker and remote site are controlled.", []),
    ("DC", "Data Confidentiality", "Measurement and maintenance data is only disclosed to authorized parties.", []),
    ("DI", "Data Integrity", "Data and commands cannot be altered unnoticed.", []),
    ("EC", "Encryption", "Cryptographic protection of data at rest and in transit.", []),
    ("IA", "Identification & Authentication", "Every human and machine user is identified and authenticated before access.", ["EC"]),
]

IA_GROUP_1 = [
    "IEC-1", "IEC-2", "IEC-3", "IEC-4", "IEC-6", "IEC-8",
    "ISO-02-4", "ISO-02-5", "ISO-02-6", "ISO-02-8", "ISO-02-10",
    "NIST-53-1", "NIST-53-2", "NIST-53-4", "NIST-53-5", "NIST-53-18", "NIST-53-22", "NIST-53-23", "NIST-53-31",
]

IA_GROUP_1_GUIDANCE = (
    "Account and access management: rights, duties, least privilege and access control.\n"
    "The solution is expected to provide:\n"
    "- unified policies\n"
    "- passwords, tokens, biometrics or similar authenticators\n"
    "- general account management (grouping, least privilege)"
)

# (requirement, group_id) -> controls per standard (IEC, ISO, NIST)
SYNTHETIC_SPLITS = {
    ("AV", 1): (2, 2, 4), ("AV", 2): (1, 2, 2), ("AV", 3): (1, 1, 1),
    ("CC", 1): (3, 2, 4), ("CC", 2): (2, 2, 3), ("CC", 3): (1, 1, 2),
    ("DC", 1): (2, 4, 3), ("DC", 2): (2, 2, 2), ("DC", 3): (1, 2, 1),
    ("DI", 1): (3, 2, 5), ("DI", 2): (2, 2, 3), ("DI", 3): (1, 1, 2),
    ("EC", 1): (1, 1, 1), ("EC", 2): (1, 0, 1),
    ("IA", 2): (4, 4, 9), ("IA", 3): (1, 1, 3),
}


def build_catalog():
    controls = []
    groups = []
    for cid in IA_GROUP_1:
        std = next(s["id"] for s in STANDARDS if cid.startswith(s["id_prefix"] + "-"))
        controls.append({"id": cid, "standard": std,
                         "title": "Identification & authentication control (published extract)"})
    groups.append({"requirement": "IA", "group_id": 1, "controls": list(IA_GROUP_1),
                   "assessment_guidance": IA_GROUP_1_GUIDANCE})

    for (req, gid), split in SYNTHETIC_SPLITS.items():
        members = []
        for std, count in zip([s["id"] for s in STANDARDS], split):
            for n in range(1, count + 1):
                cid = f"{PREFIX[std]}-SYN-{req}{gid}-{n}"
                controls.append({"id": cid, "standard": std,
                                 "title": f"Synthetic placeholder ({req} group {gid})"})
                members.append(cid)
        groups.append({"requirement": req, "group_id": gid, "controls": members,
                       "assessment_guidance": f"Synthetic group {gid} of {req}: placeholder guidance, "
                                              f"the control ids of this group are not published."})

    return {
        "catalog_version": "1",
        "name": "Industry 4.0 remote access (sample)",
        "standards": sorted(STANDARDS, key=lambda s: s["id"]),
        "requirements": sorted(
            [{"id": i, "name": n, "description": d, "depends_on": sorted(dep)} for i, n, d, dep in REQUIREMENTS],
            key=lambda r: r["id"]),
        "controls": sorted(controls, key=lambda c: c["id"]),
        "groups": sorted(
            [dict(g, controls=sorted(g["controls"])) for g in groups],
            key=lambda g: (g["requirement"], g["group_id"])),
    }


def canonical(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def assessment(subject, catalog, fp, ratings):
    return {
        "assessment_version": "1",
        "subject": subject,
        "catalog_name": catalog["name"],
        "catalog_fingerprint": fp,
        "ratings": dict(sorted(ratings.items())),
    }


def main():
    catalog = build_catalog()
    text = canonical(catalog)
    (DATA / "sample-catalog.json").write_text(text, encoding="utf-8")
    fp = hashlib.sha256(text.encode("utf-8")).hexdigest()

    keys = [f'{g["requirement"]}/{g["group_id"]}' for g in catalog["groups"]]
    out = DATA / "synthetic"
    out.mkdir(exist_ok=True)

    fixtures = {
        "all-full.json": assessment("synthetic all-full", catalog, fp, {k: "full" for k in keys}),
        "ia-none-full-partial.json": assessment("synthetic IA mix", catalog, fp,
                                                {"IA/1": "none", "IA/2": "full", "IA/3": "partial"}),
    }
    rng = random.Random(4711)
    weights = {1: (2, 3, 5), 2: (1, 3, 6), 3: (4, 3, 3), 4: (3, 4, 3), 5: (0, 1, 9)}
    for n, (w_none, w_partial, w_full) in weights.items():
        ratings = {k: rng.choices(["none", "partial", "full"], [w_none, w_partial, w_full])[0] for k in keys}
        fixtures[f"platform-{n}.json"] = assessment(f"synthetic platform {n}", catalog, fp, ratings)

    for name, doc in fixtures.items():
        (out / name).write_text(canonical(doc), encoding="utf-8")
    print(fp)


if __name__ == "__main__":
    main()
