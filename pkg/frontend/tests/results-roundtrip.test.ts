/**
 * Round trip: take the worked example with scales ready but nothing
 * stated, push the whole final statement set through the statements
 * screen, then open results and check the served ranking heads the
 * list with P1.
 */

import { describe, expect, it } from 'vitest';
import { ApiClient, StatementDoc } from '../src/api.js';
import { BASE } from './config.js';
import { Harness, choose, goTo, mountedApp, q, settled, typeInto, uid } from './helpers.js';

async function commitThroughForm(h: Harness, statement: StatementDoc): Promise<void> {
  choose(q(h.root, '[data-role=statement-kind]'), statement.kind);
  statement.args.forEach((arg, i) => {
    choose(q(h.root, `[data-arg="${i}"]`), arg);
  });
  if (statement.label) {
    typeInto(q(h.root, '[data-role=statement-label]'), statement.label);
  }
  q<HTMLButtonElement>(h.root, '[data-role=commit-statement]').click();
  await settled(h);
}

describe('results screen', () => {
  it('ranks P1 first after committing the worked-example statements', async () => {
    // the statement set to re-enter, read from a finished twin
    const api = new ApiClient(BASE);
    const twin = await api.createProject(uid('twin'), {
      template: 'case-study',
      round: 'final',
    });
    const statements = twin.document.statements;
    expect(statements.length).toBeGreaterThan(30);

    const blank = await api.createProject(uid('case'), {
      template: 'case-study',
      round: 'none',
    });

    const h = mountedApp();
    typeInto(q(h.root, '[data-role=existing-id]'), blank.document.id);
    typeInto(q(h.root, '[data-role=existing-token]'), blank.token);
    q<HTMLButtonElement>(h.root, '[data-role=open]').click();
    await settled(h);
    expect(h.store.current.doc!.id).toBe(blank.document.id);

    goTo(h, 'statements');
    for (const statement of statements) {
      await commitThroughForm(h, statement);
    }
    expect(h.store.current.doc!.statements).toHaveLength(statements.length);
    expect(q(h.root, '[data-role=committed-statements] h3').textContent).toBe(
      `committed (${statements.length})`,
    );

    goTo(h, 'results');
    q<HTMLButtonElement>(h.root, '[data-role=solve]').click();
    await settled(h);

    const row = q(h.root, '[data-ranked="P1"]');
    expect(q(row, 'td.rank').textContent).toBe('1°');

    // the displayed value is the served value, only formatted
    const bundle = h.store.current.lastBundle!;
    const served = bundle.ranking.find(([alt]) => alt === 'P1')!;
    expect(row.lastElementChild!.textContent).toBe(served[1].toFixed(4));

    // the rest of the bundle rendered from served numbers
    expect(h.root.querySelectorAll('[data-role=shapley] .bar')).toHaveLength(10);
    expect(q(h.root, '[data-role=hasse]').querySelectorAll('rect').length).toBeGreaterThan(0);
    expect(h.root.querySelector('[data-role=possible]')).toBeNull();
    const toggle = q<HTMLInputElement>(h.root, '[data-role=possible-toggle]');
    toggle.checked = true;
    toggle.dispatchEvent(new Event('change'));
    expect(h.root.querySelector('[data-role=possible]')).not.toBeNull();
  });
});
