import { describe, expect, it } from 'vitest';
import {
  describeStatement,
  formatRank,
  formatRatio,
  formatValue,
  judgmentOptions,
  judgmentText,
} from '../src/format.js';

describe('formatting', () => {
  it('marks ranks with the ordinal sign', () => {
    expect(formatRank(1)).toBe('1°');
    expect(formatRank(21)).toBe('21°');
  });

  it('renders ratios as one-decimal percentages', () => {
    expect(formatRatio(0.08992949784351136)).toBe('9.0%');
    expect(formatRatio(0)).toBe('0.0%');
    expect(formatRatio(Infinity)).toBe('∞');
  });

  it('keeps four decimals on values', () => {
    expect(formatValue(0.53316221)).toBe('0.5332');
  });

  it('describes statements with their label when present', () => {
    expect(describeStatement({ kind: 'strict_pref', args: ['P1', 'P5'] })).toBe(
      'strict_pref(P1, P5)',
    );
    expect(
      describeStatement({ kind: 'indifference', args: ['a', 'b'], label: 'close call' }),
    ).toBe('indifference(a, b) - close call');
  });
});

describe('the verbal judgment scale', () => {
  it('offers all nine grades on both sides, once each', () => {
    const options = judgmentOptions();
    expect(options).toHaveLength(17); // 9 row-side + 8 column-side
    const values = options.map((o) => `${o.num}/${o.den}`);
    expect(new Set(values).size).toBe(17);
    expect(values[0]).toBe('9/1'); // strongest row judgment first
    expect(values.at(-1)).toBe('1/9');
    expect(values).toContain('1/1');
  });

  it('flags exactly the in-between grades as fine grain', () => {
    const fine = judgmentOptions().filter((o) => o.fineGrain);
    const grades = fine.map((o) => (o.den === 1 ? o.num : o.den)).sort();
    expect(fine).toHaveLength(8);
    expect(new Set(grades)).toEqual(new Set([2, 4, 6, 8]));
  });

  it('renders stored fractions the way they were judged', () => {
    expect(judgmentText(5, 1)).toBe('5');
    expect(judgmentText(1, 7)).toBe('1/7');
  });
});
