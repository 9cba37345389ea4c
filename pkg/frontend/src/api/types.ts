/** Wire schemas for the qcluster session service.
 *
 * Everything the UI displays is parsed through these schemas first, so a
 * value that never came from the service cannot reach a panel.  Numbers
 * that may overflow double precision (coefficients) arrive as decimal
 * strings and are kept as strings.
 */

import { z } from "zod";

/** Integral values come as plain ints, fractional ones as {num, den}. */
export const Rational = z.union([
  z.number().int(),
  z.object({ num: z.number().int(), den: z.number().int() }).strict(),
]);
export type Rational = z.infer<typeof Rational>;

export const SeedObj = z
  .object({
    rank: z.number().int().min(1),
    unfrozen: z.array(z.number().int()),
    d: z.array(Rational),
    form_num: z.array(z.array(z.number().int())),
    form_den: z.number().int().min(1),
    label: z.string().optional(),
  })
  .strict();
export type SeedObj = z.infer<typeof SeedObj>;

/** One q-coefficient: [exponent in 1/D units, decimal coefficient string]. */
export const CoeffPair = z.tuple([z.number().int(), z.string().regex(/^-?\d+$/)]);
export type CoeffPair = z.infer<typeof CoeffPair>;

export const TermObj = z
  .object({
    exp: z.array(z.number().int()),
    coeff: z.array(CoeffPair),
  })
  .strict();
export type TermObj = z.infer<typeof TermObj>;

export const ElementObj = z
  .object({
    seed: z.union([SeedObj, z.string()]),
    D: z.number().int().min(1),
    terms: z.array(TermObj),
  })
  .strict();
export type ElementObj = z.infer<typeof ElementObj>;

/** Quiver arrow [from, to, multiplicity]. */
export const EdgeObj = z.tuple([z.number().int(), z.number().int(), Rational]);
export type EdgeObj = z.infer<typeof EdgeObj>;

export const TrackedStatus = z.enum(["polynomial", "laurent_only", "not_laurent"]);
export type TrackedStatus = z.infer<typeof TrackedStatus>;

export const CoefficientClass = z.enum([
  "positive_integral",
  "positive_fractional",
  "has_negative",
]);
export type CoefficientClass = z.infer<typeof CoefficientClass>;

export const TrackedRowObj = z
  .object({
    name: z.string(),
    status: TrackedStatus,
    coefficient_class: CoefficientClass.nullable(),
    term_count: z.number().int().min(0),
    failed_at: z.array(z.number().int()).nullable(),
    element: ElementObj.optional(),
  })
  .strict();
export type TrackedRowObj = z.infer<typeof TrackedRowObj>;

export const StateObj = z
  .object({
    id: z.string(),
    version: z.number().int().min(0),
    path: z.array(z.number().int()),
    seed: SeedObj,
    edges: z.array(EdgeObj),
    c: z.array(z.array(z.number().int())),
    g: z.array(z.array(z.number().int())),
    g_tilde: z.array(z.array(z.number().int())),
    tracked: z.array(TrackedRowObj),
  })
  .strict();
export type StateObj = z.infer<typeof StateObj>;

export const CreateResp = z.object({ id: z.string(), version: z.number().int() }).strict();
export type CreateResp = z.infer<typeof CreateResp>;

export const DeltaResp = z.object({ delta: StateObj }).strict();
export type DeltaResp = z.infer<typeof DeltaResp>;

export const ErrorResp = z.object({ error: z.string() }).strict();
export type ErrorResp = z.infer<typeof ErrorResp>;

export function rationalToString(r: Rational): string {
  return typeof r === "number" ? String(r) : `${r.num}/${r.den}`;
}
