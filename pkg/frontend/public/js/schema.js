import { z } from "zod";
const hintSchema = z.object({
    r: z.number().int().nonnegative(),
    c: z.number().int().nonnegative(),
    v: z.number().int().positive(),
});
const puzzleSchema = z.object({
    version: z.literal(1),
    n: z.number().int().min(2).max(13),
    palette: z.array(z.array(z.number().int().positive())),
    hints: z.array(hintSchema),
    solution: z.array(z.array(z.number().int().positive())).optional(),
    region_colors: z.array(z.number().int().nonnegative()),
    meta: z.record(z.unknown()).default({}),
});
const bundleSchema = z.object({
    version: z.literal(1),
    color_scheme: z.array(z.string().regex(/^#[0-9a-fA-F]{6}$/)),
    puzzles: z.array(puzzleSchema),
});
/** Structural checks beyond what the type schema can express. */
function semanticErrors(pz, colorCount, at) {
    const errors = [];
    const n = pz.n;
    if (pz.palette.length !== n || pz.palette.some((row) => row.length !== n)) {
        errors.push(`${at}: palette must be ${n}x${n}`);
        return errors;
    }
    const counts = new Map();
    for (const row of pz.palette) {
        for (const sym of row) {
            if (sym < 1 || sym > n) {
                errors.push(`${at}: palette symbol ${sym} outside 1..${n}`);
                return errors;
            }
            counts.set(sym, (counts.get(sym) ?? 0) + 1);
        }
    }
    for (let sym = 1; sym <= n; sym++) {
        if (counts.get(sym) !== n) {
            errors.push(`${at}: region ${sym} has ${counts.get(sym) ?? 0} cells, wants ${n}`);
        }
    }
    if (pz.region_colors.length !== n) {
        errors.push(`${at}: region_colors must list ${n} entries`);
    }
    else if (pz.region_colors.some((ci) => ci >= colorCount)) {
        errors.push(`${at}: region color index outside the color scheme`);
    }
    for (const h of pz.hints) {
        if (h.r >= n || h.c >= n || h.v > n) {
            errors.push(`${at}: hint (${h.r},${h.c})=${h.v} out of range`);
        }
    }
    if (pz.solution) {
        if (pz.solution.length !== n || pz.solution.some((row) => row.length !== n)) {
            errors.push(`${at}: solution must be ${n}x${n}`);
        }
        else {
            for (const h of pz.hints) {
                if (pz.solution[h.r][h.c] !== h.v) {
                    errors.push(`${at}: hint (${h.r},${h.c}) disagrees with the solution`);
                }
            }
        }
    }
    return errors;
}
export function parseBundle(data) {
    const parsed = bundleSchema.safeParse(data);
    if (!parsed.success) {
        return {
            errors: parsed.error.issues.map((iss) => `${iss.path.join(".") || "bundle"}: ${iss.message}`),
        };
    }
    const bundle = parsed.data;
    const errors = [];
    bundle.puzzles.forEach((pz, i) => {
        errors.push(...semanticErrors(pz, bundle.color_scheme.length, `puzzles[${i}]`));
    });
    return errors.length ? { errors } : { bundle, errors: [] };
}
