/** Badge models for tracked rows.  The text is a pure function of the served
 * verdict fields — the UI never grades an element itself.
 */

import { CoefficientClass, TrackedRowObj } from "../api/types.js";

export interface Badge {
  text: string;
  tone: "ok" | "warn" | "fail";
}

export function statusBadge(row: Pick<TrackedRowObj, "status" | "failed_at">): Badge {
  switch (row.status) {
    case "polynomial":
      return { text: "Polynomial", tone: "ok" };
    case "laurent_only":
      return { text: "Laurent-only", tone: "warn" };
    case "not_laurent":
      return {
        text: row.failed_at ? `FailsAt μ(${row.failed_at.join(",")})` : "FailsAt",
        tone: "fail",
      };
  }
}

export function coefficientBadge(cls: CoefficientClass | null): Badge | null {
  switch (cls) {
    case "positive_integral":
      return { text: "coeffs in ℕ[q,q⁻¹]", tone: "ok" };
    case "positive_fractional":
      return { text: "coeffs ≥ 0, fractional q-powers", tone: "warn" };
    case "has_negative":
      return { text: "negative coefficients", tone: "fail" };
    default:
      return null;
  }
}
