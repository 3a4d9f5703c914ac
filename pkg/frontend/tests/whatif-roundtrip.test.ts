/**
 * Round trip: stage a statement that contradicts dominance (P20 over
 * P1, though P1 is at least as good everywhere), preview, and check
 * the diagnosed conflict is shown while the stored project stays
 * byte-identical. Then discard and check a harmless staging previews
 * a delta table.
 */

import { describe, expect, it } from 'vitest';
import { ApiClient } from '../src/api.js';
import { BASE } from './config.js';
import { Harness, choose, goTo, mountedApp, q, settled, typeInto, uid } from './helpers.js';

async function stage(h: Harness, kind: string, args: string[]): Promise<void> {
  choose(q(h.root, '[data-role=whatif-kind]'), kind);
  args.forEach((arg, i) => {
    choose(q(h.root, `[data-whatif-arg="${i}"]`), arg);
  });
  q<HTMLButtonElement>(h.root, '[data-role=stage]').click();
}

describe('what-if screen', () => {
  it('diagnoses a dominance-contradicting staging without persisting it', async () => {
    const api = new ApiClient(BASE);
    const created = await api.createProject(uid('whatif'), {
      template: 'case-study',
      round: 'final',
    });

    const h = mountedApp();
    typeInto(q(h.root, '[data-role=existing-id]'), created.document.id);
    typeInto(q(h.root, '[data-role=existing-token]'), created.token);
    q<HTMLButtonElement>(h.root, '[data-role=open]').click();
    await settled(h);

    goTo(h, 'whatif');
    await stage(h, 'strict_pref', ['P20', 'P1']);

    // staged entries are visually set apart and not part of the document
    const stagedItem = q(h.root, '[data-role=staged-statements] li');
    expect(stagedItem.classList.contains('staged')).toBe(true);
    expect(stagedItem.textContent).toContain('strict_pref(P20, P1)');
    expect(h.store.current.doc!.statements).toHaveLength(
      created.document.statements.length,
    );

    const before = JSON.stringify(await api.getProject(created.document.id));

    q<HTMLButtonElement>(h.root, '[data-role=preview]').click();
    await settled(h);

    const conflict = q(h.root, '[data-role=whatif-diagnosis]');
    expect(conflict.textContent).toContain('nothing was saved');
    expect(conflict.querySelectorAll('li').length).toBeGreaterThan(0);

    const after = JSON.stringify(await api.getProject(created.document.id));
    expect(after).toBe(before);

    // still staged, still discardable
    expect(h.store.current.staged).toHaveLength(1);
    q<HTMLButtonElement>(h.root, '[data-role=discard-staged]').click();
    expect(h.store.current.staged).toHaveLength(0);
  });

  it('previews a rank delta for a consistent staging', async () => {
    const api = new ApiClient(BASE);
    const created = await api.createProject(uid('whatif-ok'), {
      template: 'case-study',
      round: 'first',
    });

    const h = mountedApp();
    typeInto(q(h.root, '[data-role=existing-id]'), created.document.id);
    typeInto(q(h.root, '[data-role=existing-token]'), created.token);
    q<HTMLButtonElement>(h.root, '[data-role=open]').click();
    await settled(h);

    goTo(h, 'whatif');
    await stage(h, 'strict_pref', ['P19', 'P6']);

    q<HTMLButtonElement>(h.root, '[data-role=preview]').click();
    await settled(h);

    const table = q(h.root, '[data-role=delta-table]');
    expect(table.querySelectorAll('[data-delta]').length).toBe(21);
    expect(q(h.root, '[data-delta="P19"]')).toBeTruthy();

    // committing staged statements persists them in order
    q<HTMLButtonElement>(h.root, '[data-role=commit-staged]').click();
    await settled(h);
    expect(h.store.current.staged).toHaveLength(0);
    const stored = await api.getProject(created.document.id);
    const last = stored.statements[stored.statements.length - 1];
    expect(last.kind).toBe('strict_pref');
    expect(last.args).toEqual(['P19', 'P6']);
  });
});
