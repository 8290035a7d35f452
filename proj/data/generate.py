#!/usr/bin/env python3
"""Regenerates data/hr_attrition.csv.

Synthetic stand-in for the IBM HR attrition table: same 35 columns, 1470
rows, 237/1233 label split, and the marginal/joint structure the analytics
and benchmark suites assert on (job-level pay bands, age concentration at
low job levels, salary-hike bands by performance rating, noise rate
columns). Attrition risk is a logistic blend of overtime, travel, low job
level, short tenure, dissatisfaction, and missing stock options, so the
dataset is learnable but not trivially separable.

Deterministic: fixed RNG seed, no inputs. Running it rewrites the CSV
byte-for-byte.
"""

import csv
import pathlib

import numpy as np

SEED = 908245
N = 1470
N_YES = 237
SIGNAL = 1.6  # diffuse risk-score scale; larger separates classes more cleanly
POCKET_P = 0.7  # attrition probability for entry-level rows working overtime

JOB_LEVEL_COUNTS = [543, 534, 218, 106, 69]
LEVEL_BASE_INCOME = [2800.0, 5500.0, 9800.0, 15500.0, 19200.0]
RATING4_COUNT = 226

DEPARTMENTS = ["Human Resources", "Research & Development", "Sales"]
EDU_FIELDS = ["Human Resources", "Life Sciences", "Marketing", "Medical", "Other",
              "Technical Degree"]
ROLES_BY_DEPT = {
    "Human Resources": (["Human Resources", "Manager"], [0.82, 0.18]),
    "Research & Development": (["Research Scientist", "Laboratory Technician",
                                "Healthcare Representative", "Manufacturing Director",
                                "Research Director", "Manager"],
                               [0.31, 0.28, 0.14, 0.15, 0.08, 0.04]),
    "Sales": (["Sales Executive", "Sales Representative", "Manager"], [0.62, 0.26, 0.12]),
}


def main() -> None:
    rng = np.random.default_rng(SEED)

    job_level = rng.permutation(np.repeat(np.arange(1, 6), JOB_LEVEL_COUNTS))

    mu_twy = np.array([6.0, 10.0, 16.0, 22.0, 27.0])[job_level - 1]
    sd_twy = np.array([3.2, 4.0, 4.5, 5.0, 5.0])[job_level - 1]
    total_working_years = np.clip(np.rint(rng.normal(mu_twy, sd_twy)), 0, 40).astype(int)

    age = np.clip(np.rint(18 + 0.85 * total_working_years + rng.normal(6.0, 4.0, N)),
                  18, 60).astype(int)

    monthly_income = np.clip(
        np.rint(LEVEL_BASE_INCOME[0] * 0 + np.array(LEVEL_BASE_INCOME)[job_level - 1]
                + 40.0 * total_working_years + rng.normal(0.0, 900.0, N)),
        1009, None).astype(int)

    department = rng.choice(DEPARTMENTS, N, p=[0.043, 0.654, 0.303])
    job_role = np.empty(N, dtype=object)
    for dept in DEPARTMENTS:
        mask = department == dept
        roles, probs = ROLES_BY_DEPT[dept]
        job_role[mask] = rng.choice(roles, int(mask.sum()), p=probs)

    education = rng.choice([1, 2, 3, 4, 5], N, p=[0.115, 0.192, 0.389, 0.271, 0.033])
    edu_field = np.where(
        department == "Human Resources",
        rng.choice(["Human Resources", "Other"], N, p=[0.8, 0.2]),
        rng.choice(EDU_FIELDS, N, p=[0.01, 0.41, 0.11, 0.32, 0.05, 0.10]))

    business_travel = rng.choice(["Non-Travel", "Travel_Rarely", "Travel_Frequently"],
                                 N, p=[0.10, 0.71, 0.19])
    gender = rng.choice(["Female", "Male"], N, p=[0.40, 0.60])
    marital = rng.choice(["Divorced", "Married", "Single"], N, p=[0.22, 0.46, 0.32])

    stock = np.empty(N, dtype=int)
    single = marital == "Single"
    stock[single] = rng.choice([0, 1, 2, 3], int(single.sum()), p=[0.86, 0.08, 0.04, 0.02])
    stock[~single] = rng.choice([0, 1, 2, 3], int((~single).sum()), p=[0.27, 0.44, 0.21, 0.08])

    overtime = rng.choice(["No", "Yes"], N, p=[0.717, 0.283])

    distance = np.clip(np.rint(1 + 28 * rng.beta(1.1, 2.6, N)), 1, 29).astype(int)
    env_sat = rng.choice([1, 2, 3, 4], N, p=[0.19, 0.20, 0.31, 0.30])
    job_inv = rng.choice([1, 2, 3, 4], N, p=[0.06, 0.26, 0.59, 0.09])
    job_sat = rng.choice([1, 2, 3, 4], N, p=[0.20, 0.19, 0.30, 0.31])
    rel_sat = rng.choice([1, 2, 3, 4], N, p=[0.19, 0.21, 0.31, 0.29])
    wlb = rng.choice([1, 2, 3, 4], N, p=[0.05, 0.23, 0.61, 0.11])

    num_companies = np.clip(np.rint(9 * rng.beta(1.2, 2.8, N)), 0, 9).astype(int)
    training = np.clip(np.rint(rng.normal(2.8, 1.3, N)), 0, 6).astype(int)

    years_at_company = np.minimum(
        np.rint(total_working_years * rng.beta(2.4, 1.6, N)).astype(int),
        total_working_years)
    years_in_role = np.rint(years_at_company * rng.beta(2.0, 2.2, N)).astype(int)
    years_since_promo = np.rint(years_at_company * rng.beta(1.0, 3.4, N)).astype(int)
    years_with_mgr = np.rint(years_at_company * rng.beta(2.0, 2.2, N)).astype(int)

    rating = np.full(N, 3, dtype=int)
    rating[rng.choice(N, RATING4_COUNT, replace=False)] = 4
    hike = np.where(rating == 3, rng.integers(11, 16, N), rng.integers(21, 26, N))

    daily_rate = rng.integers(102, 1500, N)
    hourly_rate = rng.integers(30, 101, N)
    monthly_rate = rng.integers(2094, 27000, N)

    risk = (
        1.25 * (overtime == "Yes")
        + 0.62 * single
        + 0.55 * (business_travel == "Travel_Frequently")
        + 0.50 * (stock == 0)
        + 0.45 * (job_level == 1)
        - 0.045 * (age - 36)
        - 0.090 * years_at_company
        - 0.00004 * (monthly_income - 6500)
        + 0.030 * (distance - 9)
        - 0.24 * (job_sat - 2.5)
        - 0.20 * (env_sat - 2.5)
        - 0.22 * (job_inv - 2.7)
        - 0.18 * (wlb - 2.8)
        + 0.055 * num_companies
    )
    # Entry-level staff working overtime leave at a far higher rate; everyone
    # else gets a mild logistic tilt, so the pocket carries the headline
    # accuracy while the diffuse remainder keeps the ranking from being too
    # clean.
    pocket = (overtime == "Yes") & (job_level == 1)
    z = SIGNAL * (risk - risk.mean()) / risk.std()
    target_rest = N_YES - POCKET_P * pocket.sum()
    lo, hi = -20.0, 20.0
    for _ in range(80):  # bisect the intercept so expected positives hit N_YES
        mid = (lo + hi) / 2
        if (1.0 / (1.0 + np.exp(-(z[~pocket] + mid)))).sum() < target_rest:
            lo = mid
        else:
            hi = mid
    p = np.where(pocket, POCKET_P, 1.0 / (1.0 + np.exp(-(z + (lo + hi) / 2))))
    attrition_flag = rng.random(N) < p

    # Nudge the closest-to-boundary rows until exactly N_YES are positive.
    gap = int(attrition_flag.sum()) - N_YES
    if gap > 0:
        flips = np.argsort(np.where(attrition_flag, p, np.inf))[:gap]
        attrition_flag[flips] = False
    elif gap < 0:
        flips = np.argsort(np.where(~attrition_flag, -p, np.inf))[:-gap]
        attrition_flag[flips] = True
    attrition = np.where(attrition_flag, "Yes", "No")

    header = ["Age", "Attrition", "BusinessTravel", "DailyRate", "Department",
              "DistanceFromHome", "Education", "EducationField", "EmployeeCount",
              "EmployeeNumber", "EnvironmentSatisfaction", "Gender", "HourlyRate",
              "JobInvolvement", "JobLevel", "JobRole", "JobSatisfaction", "MaritalStatus",
              "MonthlyIncome", "MonthlyRate", "NumCompaniesWorked", "Over18", "OverTime",
              "PercentSalaryHike", "PerformanceRating", "RelationshipSatisfaction",
              "StandardHours", "StockOptionLevel", "TotalWorkingYears",
              "TrainingTimesLastYear", "WorkLifeBalance", "YearsAtCompany",
              "YearsInCurrentRole", "YearsSinceLastPromotion", "YearsWithCurrManager"]

    out = pathlib.Path(__file__).with_name("hr_attrition.csv")
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(N):
            writer.writerow([
                age[i], attrition[i], business_travel[i], daily_rate[i], department[i],
                distance[i], education[i], edu_field[i], 1, i + 1, env_sat[i], gender[i],
                hourly_rate[i], job_inv[i], job_level[i], job_role[i], job_sat[i],
                marital[i], monthly_income[i], monthly_rate[i], num_companies[i], "Y",
                overtime[i], hike[i], rating[i], rel_sat[i], 80, stock[i],
                total_working_years[i], training[i], wlb[i], years_at_company[i],
                years_in_role[i], years_since_promo[i], years_with_mgr[i],
            ])
    print(f"wrote {out} ({N} rows, {int(attrition_flag.sum())} Yes)")


if __name__ == "__main__":
    main()
