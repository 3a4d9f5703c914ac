/**
 * format.ts - display formatting only.
 *
 * The one place the UI touches numbers: turning API values into text,
 * never producing new quantities.
 */

/** Ordinal rank marker: 1 -> "1°". */
export function formatRank(rank: number): string {
  return `${rank}°`;
}

/** Choquet values, Shapley indices and the like: four decimals. */
export function formatValue(value: number): string {
  return value.toFixed(4);
}

/** Consistency ratio as a percentage with one decimal. */
export function formatRatio(ratio: number): string {
  if (!Number.isFinite(ratio)) return '∞';
  return `${(ratio * 100).toFixed(1)}%`;
}

export function formatEpsilon(eps: number | null): string {
  return eps === null ? '-' : eps.toFixed(4);
}

// ── The nine-point verbal judgment scale ──────────────────────────────

export interface JudgmentOption {
  num: number; // judgment as a fraction num/den
  den: number;
  label: string;
  fineGrain: boolean; // only offered when the in-between toggle is on
}

const VERBAL: [number, string][] = [
  [1, 'indifferent'],
  [2, 'between indifferent and moderate'],
  [3, 'moderately preferred'],
  [4, 'between moderate and strong'],
  [5, 'strongly preferred'],
  [6, 'between strong and very strong'],
  [7, 'very strongly preferred'],
  [8, 'between very strong and extreme'],
  [9, 'extremely preferred'],
];

/**
 * All selectable judgments for one upper-triangle cell, best-for-row
 * first. Values below one voice the column side of the comparison.
 */
export function judgmentOptions(): JudgmentOption[] {
  const options: JudgmentOption[] = [];
  for (const [value, label] of [...VERBAL].reverse()) {
    options.push({
      num: value,
      den: 1,
      label: value === 1 ? label : `row ${label} (${value})`,
      fineGrain: value % 2 === 0,
    });
  }
  for (const [value, label] of VERBAL.slice(1)) {
    options.push({
      num: 1,
      den: value,
      label: `column ${label} (1/${value})`,
      fineGrain: value % 2 === 0,
    });
  }
  return options;
}

/** Text shown for a stored [num, den] judgment. */
export function judgmentText(num: number, den: number): string {
  if (den === 1) return String(num);
  return `${num}/${den}`;
}

/** One-line rendering of a preference statement. */
export function describeStatement(statement: {
  kind: string;
  args: string[];
  label?: string;
}): string {
  const head = `${statement.kind}(${statement.args.join(', ')})`;
  return statement.label ? `${head} - ${statement.label}` : head;
}
