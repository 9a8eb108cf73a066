"""Regenerate the bundled baseline scenario file (run from the repo root or anywhere)."""

import json

HISTORY = {
    1986: {"TI": 520, "SI": 892, "SK": 37, "AK": 113},
    1987: {"TI": 169, "SI": 599, "SK": 60, "AK": 270},
    1988: {"TI": 156, "SI": 389, "SK": 86, "AK": 260},
    1989: {"TI": 79, "SI": 580, "SK": 59, "AK": 124},
    1990: {"TI": 142, "SI": 1072, "SK": 51, "AK": 126},
    1991: {"TI": 202, "SI": 1078, "SK": 33, "AK": 71},
    1992: {"TI": 261, "SI": 1038, "SK": 71, "AK": 126},
    1993: {"TI": 205, "SI": 835, "SK": 148, "AK": 339},
    1994: {"TI": 254, "SI": 898, "SK": 95, "AK": 318},
    1995: {"TI": 402, "SI": 1185, "SK": 122, "AK": 328},
    1996: {"TI": 349, "SI": 1031, "SK": 111, "AK": 339},
    1997: {"TI": 525, "SI": 1205, "SK": 93, "AK": 304},
    1998: {"TI": 501, "SI": 1081, "SK": 156, "AK": 256},
    1999: {"TI": 645, "SI": 1268, "SK": 152, "AK": 325},
    2000: {"TI": 697, "SI": 1108, "SK": 117, "AK": 274},
    2001: {"TI": 673, "SI": 861, "SK": 46, "AK": 197},
    2002: {"TI": 559, "SI": 733, "SK": 35, "AK": 237},
    2003: {"TI": 455, "SI": 534, "SK": 32, "AK": 193},
    2004: {"TI": 580, "SI": 543, "SK": 43, "AK": 166},
    2005: {"TI": 312, "SI": 295, "SK": 33, "AK": 79},
}

BENEFITS = [
    (1, "Mengurangi biaya administrasi pembuatan laporan", "tangible", "measurable", "technology", "financial", "simple_roi"),
    (2, "Mengurangi tenaga pembuatan laporan", "tangible", "measurable", "technology", "financial", "simple_roi"),
    (3, "Mempercepat waktu pembuatan laporan/administrasi", "tangible", "immeasurable", "technology", "non_financial", "none"),
    (4, "Meningkatkan jumlah mahasiswa baru", "intangible", "measurable", "business", "financial", "simple_roi"),
    (5, "Meningkatkan bantuan dana dari pihak ketiga", "intangible", "measurable", "business", "financial", "simple_roi"),
    (6, "Meningkatkan produktivitas manajemen tingkat atas", "intangible", "measurable", "business", "financial", "simple_roi"),
    (7, "Meningkatkan citra perguruan tinggi", "intangible", "immeasurable", "business", "non_financial", "none"),
    (8, "Meningkatkan hubungan dengan stakeholder", "intangible", "immeasurable", "business", "non_financial", "none"),
    (9, "Meningkatkan moral karyawan", "intangible", "immeasurable", "business", "non_financial", "none"),
    (10, "Meningkatkan pengetahuan manajemen", "intangible", "immeasurable", "technology", "non_financial", "none"),
    (11, "Meningkatkan perencanaan pengelolaan data", "intangible", "immeasurable", "technology", "non_financial", "none"),
    (12, "Meningkatkan fleksibilitas pemanfaatan data", "intangible", "immeasurable", "technology", "non_financial", "none"),
    (13, "Meningkatkan kemampuan pengambilan keputusan", "intangible", "immeasurable", "technology", "non_financial", "none"),
]


def build_doc() -> dict:
    return {
        "schema_version": 1,
        "meta": {
            "name": "campus-dw-baseline",
            "currency": "IDR",
            "description": "Five-year appraisal of a campus data-warehouse investment: operational report savings, management productivity gains and cohort-based enrollment revenue against the build cost.",
        },
        "horizon": 5,
        "options": {
            "rounding": "half_up",
            "table15_compat": True,
            "tax_rate": "0",
            "discount_rate": "0.1",
        },
        "benefits": {
            "items": [
                {
                    "id": bid,
                    "name": name,
                    "tangibility": tang,
                    "measurability": meas,
                    "domain_class": domain,
                    "value_class": value,
                    "method": method,
                }
                for bid, name, tang, meas, domain, value, method in BENEFITS
            ],
            "exclusions": [5],
        },
        "investment": {
            "staff": [
                {"role": "Kepala Proyek", "headcount": 1, "hourly_wage": "20000", "hours_per_day": 7, "working_days": 260},
                {"role": "Data Warehouse Administrator", "headcount": 2, "hourly_wage": "15000", "hours_per_day": 7, "working_days": 260},
                {"role": "Programmer", "headcount": 2, "hourly_wage": "10000", "hours_per_day": 7, "working_days": 260},
                {"role": "Administrasi", "headcount": 1, "hourly_wage": "5000", "hours_per_day": 7, "working_days": 260},
            ],
            "hardware": [
                {"name": "Server HP Proliant ML110G2", "amount": "12000000"},
                {"name": "Stabilizer", "amount": "30000000"},
                {"name": "UPS", "amount": "40000000"},
            ],
            "network": [
                {"name": "Switch 16 port (2 unit)", "amount": "2800000"},
                {"name": "Kabel UTP Kategori 6", "amount": "1050000"},
                {"name": "RJ-45 + connector shield", "amount": "750000"},
                {"name": "Network Interface Card", "amount": "1200000"},
            ],
            "support": [
                {"name": "Mengadakan Seminar", "amount": "5000000"},
                {"name": "Peralatan Alat Tulis Kantor", "amount": "2000000"},
                {"name": "Lain-lain", "amount": "5000000"},
                {"name": "Lampu cadangan", "amount": "500000"},
                {"name": "Rak Komputer Server", "amount": "1900000"},
            ],
        },
        "running_costs": [
            {"name": "Penyempurnaan Sistem", "base": "30150000", "start_year": 2, "annual_ratio": "0.9"},
            {"name": "Peningkatan memory server", "base": "16000000", "start_year": 3, "annual_ratio": "0.9"},
            {"name": "Peningkatan hardisk server", "base": "24000000", "start_year": 3, "annual_ratio": "0.9"},
        ],
        "operational_costs": [
            {"name": "Kertas", "base": "360000", "start_year": 1, "annual_ratio": "1.1", "saving_fraction": "0.75", "benefit_id": 1},
            {"name": "Tinta Printer", "base": "1100000", "start_year": 1, "annual_ratio": "1.1", "saving_fraction": "0.75", "benefit_id": 1},
            {"name": "Tinta FotoCopy", "base": "450000", "start_year": 1, "annual_ratio": "1.1", "saving_fraction": "0.75", "benefit_id": 1},
            {"name": "Honor panitia", "base": "12000000", "start_year": 1, "annual_ratio": "1.1", "saving_fraction": "1", "benefit_id": 1},
            {"name": "Rapat", "base": "35000000", "start_year": 1, "annual_ratio": "1.1", "saving_fraction": "0.75", "benefit_id": 1},
            {"name": "Sistem Analis (1 orang)", "base": "60000000", "start_year": 1, "annual_ratio": "1.1", "saving_fraction": "1", "benefit_id": 2},
            {"name": "Programmer (2 orang)", "base": "72000000", "start_year": 1, "annual_ratio": "1.1", "saving_fraction": "1", "benefit_id": 2},
            {"name": "Staf (2 orang)", "base": "48000000", "start_year": 1, "annual_ratio": "1.1", "saving_fraction": "1", "benefit_id": 2},
        ],
        "productivity": {
            "loss_before": "69600000",
            "loss_after": "15120000",
            "growth": "0.1",
            "benefit_id": 6,
            "roles": [
                {"role": "Dekan", "utilization_before": "0.5", "utilization_after": "0.65"},
                {"role": "Ketua Program Studi", "utilization_before": "0.6", "utilization_after": "0.75"},
                {"role": "Sekretaris Program Studi", "utilization_before": "0.7", "utilization_after": "0.85"},
            ],
        },
        "enrollment": {
            "growth": "0.2",
            "benefit_id": 4,
            "programs": ["TI", "SI", "SK", "AK"],
            "history": {str(year): dict(row) for year, row in sorted(HISTORY.items())},
            "fee": {
                "first_semester_items": [
                    {"name": "Daftar Ulang", "amount": "200000"},
                    {"name": "SKS (20 sks @ 65000)", "amount": "1300000"},
                    {"name": "Operasional pendidikan", "amount": "1960000"},
                    {"name": "Dana Kemahasiswaan", "amount": "15000"},
                    {"name": "Koperasi Mahasiswa", "amount": "10000"},
                    {"name": "Paket Mahasiswa baru", "amount": "500000"},
                ],
                "donation_grades": ["6000000", "6500000", "7000000", "8000000"],
                "earmarked_items": ["Dana Kemahasiswaan", "Koperasi Mahasiswa", "Paket Mahasiswa baru"],
                "overhead_fraction": "0.4",
                "escalation": "0.05",
            },
            "schedule": [
                {"age": 0, "semesters": 1, "multiplier": "1"},
                {"age": 1, "semesters": 2, "multiplier": "0.65"},
                {"age": 2, "semesters": 2, "multiplier": "0.65"},
                {"age": 3, "semesters": 1, "multiplier": "0.65"},
                {"age": 4, "semesters": 1, "multiplier": "0.65"},
            ],
        },
    }


if __name__ == "__main__":
    from pathlib import Path

    from roi_forge.scenario import build_scenario, emit_scenario

    scenario, diagnostics = build_scenario(build_doc())
    for d in diagnostics:
        print(d)
    assert scenario is not None
    text = emit_scenario(scenario)
    target = Path(__file__).resolve().parent.parent / "src/roi_forge/data/baseline.json"
    target.write_text(text, encoding="utf-8")
    print(f"wrote {len(text)} bytes to {target}")
