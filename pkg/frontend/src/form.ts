// Form model: raw input strings plus per-field manual/estimated badges.
// Numbers are parsed exactly once, on the way into the request payload;
// nothing here computes scores or fit.

import type { Badge, MeasurementField, RecommendRequestBody } from "./types";
import { MEASUREMENT_FIELDS } from "./types";

export interface MeasurementEntry {
  value: string;
  badge: Badge;
}

export interface FormErrors {
  gender?: string;
  budget?: string;
}

export class RecommendForm {
  gender = "";
  profession = "";
  budget = "";
  category = "";
  topK = "10";
  measurements = new Map<MeasurementField, MeasurementEntry>();

  validate(): FormErrors {
    const errors: FormErrors = {};
    if (!this.gender.trim()) errors.gender = "gender is required";
    const budget = Number(this.budget);
    if (this.budget.trim() === "" || !Number.isFinite(budget) || budget <= 0) {
      errors.budget = "budget must be a number > 0";
    }
    return errors;
  }

  get canSubmit(): boolean {
    return Object.keys(this.validate()).length === 0;
  }

  setMeasurement(field: MeasurementField, value: string): void {
    // A user edit always marks the field manual, even over an estimate.
    if (value.trim() === "") {
      this.measurements.delete(field);
      return;
    }
    this.measurements.set(field, { value, badge: "manual" });
  }

  applyEstimate(payload: Record<string, number | string>): MeasurementField[] {
    const filled: MeasurementField[] = [];
    for (const field of MEASUREMENT_FIELDS) {
      const v = payload[field];
      if (typeof v !== "number") continue;
      this.measurements.set(field, { value: String(v), badge: "estimated" });
      filled.push(field);
    }
    return filled;
  }

  badge(field: MeasurementField): Badge | undefined {
    return this.measurements.get(field)?.badge;
  }

  toRequestBody(): RecommendRequestBody {
    const measurements: Record<string, number> = {};
    for (const [field, entry] of this.measurements) {
      const n = Number(entry.value);
      if (Number.isFinite(n)) measurements[field] = n;
    }
    const body: RecommendRequestBody = {
      gender: this.gender.trim(),
      profession: this.profession.trim(),
      budget: Number(this.budget),
      top_k: Math.max(1, Number(this.topK) || 10),
      measurements,
    };
    const category = this.category.trim();
    if (category) body.category = category;
    return body;
  }
}
