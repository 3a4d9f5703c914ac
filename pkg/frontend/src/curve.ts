/**
 * curve.ts - interpolation preview for one criterion's value scale.
 *
 * Draws the (level, value) anchors the service computed and the
 * straight segments between them, which is precisely how ratings are
 * scored between anchors; the decision maker watches nonlinearity
 * emerge as judgments change.
 */

import { ScaleDoc } from './api.js';
import { el, svgEl } from './dom.js';

const WIDTH = 320;
const HEIGHT = 160;
const PAD = 24;

export function drawScaleCurve(criterion: string, scale: ScaleDoc): HTMLElement {
  const box = el('div', { class: 'scale-curve' });
  box.append(el('h4', {}, `value scale: ${criterion}`));

  const svg = svgEl('svg', {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: String(WIDTH),
    height: String(HEIGHT),
    role: 'img',
  });

  const lo = scale.levels[0];
  const hi = scale.levels[scale.levels.length - 1];
  const x = (level: number) => PAD + ((level - lo) / (hi - lo)) * (WIDTH - 2 * PAD);
  const y = (value: number) => HEIGHT - PAD - value * (HEIGHT - 2 * PAD);

  // axes
  svg.append(
    svgEl('line', {
      x1: String(PAD), y1: String(HEIGHT - PAD),
      x2: String(WIDTH - PAD), y2: String(HEIGHT - PAD),
      class: 'axis',
    }),
    svgEl('line', {
      x1: String(PAD), y1: String(PAD),
      x2: String(PAD), y2: String(HEIGHT - PAD),
      class: 'axis',
    }),
  );

  const points = scale.levels
    .map((level, i) => `${x(level)},${y(scale.values[i])}`)
    .join(' ');
  svg.append(svgEl('polyline', { points, class: 'curve' }));

  scale.levels.forEach((level, i) => {
    svg.append(
      svgEl('circle', {
        cx: String(x(level)),
        cy: String(y(scale.values[i])),
        r: '3',
        class: 'anchor',
      }),
    );
    const tick = svgEl('text', {
      x: String(x(level)),
      y: String(HEIGHT - PAD + 14),
      'text-anchor': 'middle',
      class: 'tick',
    });
    tick.textContent = String(level);
    svg.append(tick);
  });

  box.append(svg);
  return box;
}
